"""Squared-exponential Gaussian processes sampled via Cholesky factors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numcore import RngStream

__all__ = ["SEKernel", "gp_sample"]


@dataclass(frozen=True)
class SEKernel:
    """k(x, x') = exp(-sum_d (x_d - x'_d)^2 / (2 l^2)), unit variance."""
    lengthscale: float
    bounds: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        if self.lengthscale <= 0:
            raise ValueError("lengthscale must be positive")

    def gram(self, points: np.ndarray, other: np.ndarray | None = None) -> np.ndarray:
        a = _as_points(points)
        b = a if other is None else _as_points(other)
        sq = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
        return np.exp(-0.5 * sq / self.lengthscale**2)


def _as_points(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return x[:, None] if x.ndim == 1 else x


def chol_with_jitter(k: np.ndarray) -> np.ndarray:
    """Cholesky with a multiplicative jitter ladder 1e-10 -> 1e-6."""
    jitter = 1e-10
    while jitter <= 1e-6:
        try:
            return np.linalg.cholesky(k + jitter * np.eye(k.shape[0]))
        except np.linalg.LinAlgError:
            jitter *= 10.0
    raise np.linalg.LinAlgError(
        "kernel matrix is not positive definite even with jitter 1e-6")


def gp_sample(kernel: SEKernel, points: np.ndarray, count: int,
              stream: RngStream) -> np.ndarray:
    """`count` zero-mean draws resolved on `points`; shape (count, n_points)."""
    flat = _as_points(points)
    if count < 1:
        raise ValueError("count must be >= 1")
    if len(np.unique(flat, axis=0)) != flat.shape[0]:
        raise ValueError("sample points must be distinct")
    chol = chol_with_jitter(kernel.gram(flat))
    z = stream.normal((count, flat.shape[0]))
    return z @ chol.T
