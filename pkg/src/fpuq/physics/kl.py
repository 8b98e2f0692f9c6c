"""Truncated Karhunen-Loeve expansion of a kernel on a fixed grid.

Modes come from the symmetric eigendecomposition of the grid kernel matrix
(eigenvectors orthonormal on the grid). Off-grid evaluation uses the Nystrom
extension, which reproduces the grid values exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gp import SEKernel, _as_points

__all__ = ["KLField", "kl_decompose", "kl_eval", "kl_sample"]


@dataclass
class KLField:
    kernel: SEKernel
    points: np.ndarray        # (n, d) grid the decomposition lives on
    eigenvalues: np.ndarray   # all n, nonincreasing
    eigenvectors: np.ndarray  # (n, n), columns matched to eigenvalues
    truncation: int

    def retained_fraction(self, d: int | None = None) -> float:
        d = self.truncation if d is None else d
        return float(self.eigenvalues[:d].sum() / self.eigenvalues.sum())


def kl_decompose(kernel: SEKernel, points: np.ndarray, truncation: int) -> KLField:
    pts = _as_points(points)
    n = pts.shape[0]
    if not 1 <= truncation <= n:
        raise ValueError(f"truncation must be in [1, {n}]")
    k = kernel.gram(pts)
    eigvals, eigvecs = np.linalg.eigh(k)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    if eigvals[-1] < -1e-8:
        raise np.linalg.LinAlgError("kernel matrix has significantly negative eigenvalues")
    return KLField(kernel, pts, eigvals, eigvecs, truncation)


def kl_sample(field: KLField, zeta: np.ndarray) -> np.ndarray:
    """Grid values sum_i sqrt(lambda_i) zeta_i phi_i; zeta has `truncation` entries."""
    zeta = np.asarray(zeta, dtype=np.float64)
    if zeta.shape[-1] != field.truncation:
        raise ValueError(f"zeta must have {field.truncation} entries")
    d = field.truncation
    coeff = np.sqrt(np.clip(field.eigenvalues[:d], 0.0, None)) * zeta
    return coeff @ field.eigenvectors[:, :d].T


def kl_eval(field: KLField, zeta: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Nystrom extension of the truncated expansion to arbitrary points."""
    zeta = np.asarray(zeta, dtype=np.float64)
    d = field.truncation
    lam = field.eigenvalues[:d]
    usable = lam > 1e-12 * max(field.eigenvalues[0], 1.0)
    cross = field.kernel.gram(_as_points(points), field.points)      # (q, n)
    phi = cross @ field.eigenvectors[:, :d][:, usable] / lam[usable]  # (q, d')
    coeff = np.sqrt(lam[usable]) * zeta[..., usable]
    return coeff @ phi.T
