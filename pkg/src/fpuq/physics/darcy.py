"""Conservative finite-difference solver for steady Darcy flow on the unit square.

div(lambda grad u) = f with u fixed on the x=0 / x=1 sides and zero normal
flux at y=0 / y=1. Vertex-centered grid; fluxes use midpoint conductivities,
boundary rows use half control volumes (equivalent to mirror ghost nodes).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

__all__ = ["DarcyProblem", "darcy_solve", "restrict_vertex_grid", "unit_grid_axes",
           "unit_grid_points"]


@dataclass(frozen=True)
class DarcyProblem:
    forcing: float = 50.0
    left_value: float = 1.0   # u at x = 0
    right_value: float = 0.0  # u at x = 1


def unit_grid_axes(n: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, n)


def unit_grid_points(n: int) -> np.ndarray:
    """Row-major (x outer, y inner) vertex coordinates, shape (n*n, 2)."""
    ax = unit_grid_axes(n)
    xx, yy = np.meshgrid(ax, ax, indexing="ij")
    return np.column_stack([xx.ravel(), yy.ravel()])


def _midpoint_conductivities(lam, n: int):
    """Conductivity at x- and y-midpoints: shapes (n-1, n) and (n, n-1)."""
    ax = unit_grid_axes(n)
    if callable(lam):
        xm = 0.5 * (ax[:-1] + ax[1:])
        xx, yy = np.meshgrid(xm, ax, indexing="ij")
        lam_x = lam(np.column_stack([xx.ravel(), yy.ravel()])).reshape(n - 1, n)
        xx, yy = np.meshgrid(ax, xm, indexing="ij")
        lam_y = lam(np.column_stack([xx.ravel(), yy.ravel()])).reshape(n, n - 1)
    else:
        grid = np.asarray(lam, dtype=np.float64)
        if grid.shape != (n, n):
            raise ValueError(f"lambda grid must be {(n, n)}, got {grid.shape}")
        lam_x = 0.5 * (grid[:-1, :] + grid[1:, :])
        lam_y = 0.5 * (grid[:, :-1] + grid[:, 1:])
    if np.any(lam_x <= 0) or np.any(lam_y <= 0):
        raise ValueError("conductivity must be positive everywhere")
    return lam_x, lam_y


def darcy_solve(problem: DarcyProblem, lam, resolution: int,
                forcing: Callable | float | None = None) -> np.ndarray:
    """Solution on the (resolution x resolution) vertex grid, u[i, j] = u(x_i, y_j)."""
    n = int(resolution)
    if n < 20:
        raise ValueError("resolution must be at least 20 points per side")
    h = 1.0 / (n - 1)
    lam_x, lam_y = _midpoint_conductivities(lam, n)

    ax = unit_grid_axes(n)
    if forcing is None:
        f_grid = np.full((n, n), problem.forcing)
    elif callable(forcing):
        xx, yy = np.meshgrid(ax, ax, indexing="ij")
        f_grid = forcing(np.column_stack([xx.ravel(), yy.ravel()])).reshape(n, n)
    else:
        f_grid = np.full((n, n), float(forcing))

    # unknowns: interior columns i = 1..n-2, all rows j
    ii, jj = np.meshgrid(np.arange(1, n - 1), np.arange(n), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    idx = lambda i, j: (i - 1) * n + j
    h2 = h * h

    a_e = lam_x[ii, jj] / h2       # coupling to (i+1, j)
    a_w = lam_x[ii - 1, jj] / h2   # coupling to (i-1, j)
    a_n = np.zeros_like(a_e)       # coupling to (i, j+1)
    a_s = np.zeros_like(a_e)       # coupling to (i, j-1)
    up = jj < n - 1
    dn = jj > 0
    a_n[up] = lam_y[ii[up], jj[up]] / h2
    a_s[dn] = lam_y[ii[dn], jj[dn] - 1] / h2
    a_n[jj == 0] *= 2.0       # half control volumes along the flux-free sides
    a_s[jj == n - 1] *= 2.0

    rows, cols, vals = [idx(ii, jj)], [idx(ii, jj)], [-(a_e + a_w + a_n + a_s)]
    east = ii < n - 2
    rows.append(idx(ii[east], jj[east]))
    cols.append(idx(ii[east] + 1, jj[east]))
    vals.append(a_e[east])
    west = ii > 1
    rows.append(idx(ii[west], jj[west]))
    cols.append(idx(ii[west] - 1, jj[west]))
    vals.append(a_w[west])
    rows.append(idx(ii[up], jj[up]))
    cols.append(idx(ii[up], jj[up] + 1))
    vals.append(a_n[up])
    rows.append(idx(ii[dn], jj[dn]))
    cols.append(idx(ii[dn], jj[dn] - 1))
    vals.append(a_s[dn])

    b = f_grid[ii, jj].astype(np.float64)
    b[ii == 1] -= a_w[ii == 1] * problem.left_value
    b[ii == n - 2] -= a_e[ii == n - 2] * problem.right_value

    mat = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=((n - 2) * n, (n - 2) * n))
    sol = spla.spsolve(mat, b)

    residual = np.abs(mat @ sol - b).max()
    scale = max(np.abs(b).max(), 1.0)
    if not np.isfinite(sol).all() or residual > 1e-10 * scale:
        raise RuntimeError(
            f"linear solve failed: residual {residual:.3e} against scale {scale:.3e}")

    u = np.empty((n, n))
    u[0, :] = problem.left_value
    u[-1, :] = problem.right_value
    u[1:-1, :] = sol.reshape(n - 2, n)
    return u


def restrict_vertex_grid(u_fine: np.ndarray, coarse_n: int) -> np.ndarray:
    """Subsample a vertex-grid field onto a nested coarser vertex grid."""
    fine_n = u_fine.shape[0]
    if (fine_n - 1) % (coarse_n - 1) != 0:
        raise ValueError(f"{fine_n}-point grid does not nest a {coarse_n}-point grid")
    step = (fine_n - 1) // (coarse_n - 1)
    return u_fine[::step, ::step]
