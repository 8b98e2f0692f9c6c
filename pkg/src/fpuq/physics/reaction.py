"""Nonlinear diffusion-reaction system on [-1, 1] with zero Dirichlet ends.

diffusion * u'' - k_r(u) * u^3 = f,  k_r(u) = 0.4 exp(-u),
with the exact solution family
u = (x^2 - 1) * sum_{i=1..4} [w_{2i-1} sin(i pi x) + w_{2i} cos(i pi x)].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numcore import RngStream, input_derivative
from ..numcore import ops

__all__ = ["ReactionProblem", "draw_solution_coefficients", "exact_reaction_solution",
           "exact_solution_derivs", "reaction_forcing", "reaction_rate",
           "reaction_residual"]


@dataclass(frozen=True)
class ReactionProblem:
    diffusion: float = 0.01
    rate_scale: float = 0.4
    domain: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        if self.diffusion <= 0:
            raise ValueError("diffusion coefficient must be positive")


def reaction_rate(u, scale: float = 0.4):
    return scale * ops.exp(-u)


def exact_reaction_solution(omega, x):
    """Works on floats, arrays, tensors, and duals alike."""
    omega = np.asarray(omega, dtype=np.float64)
    if omega.shape != (8,):
        raise ValueError("omega must have 8 entries")
    series = 0.0
    for i in range(1, 5):
        k = i * np.pi
        series = series + omega[2 * i - 2] * ops.sin(k * x) + omega[2 * i - 1] * ops.cos(k * x)
    return (x * x - 1.0) * series


def exact_solution_derivs(omega, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Analytic (u, u', u'') of the exact solution."""
    omega = np.asarray(omega, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    s = np.zeros_like(x)
    s1 = np.zeros_like(x)
    s2 = np.zeros_like(x)
    for i in range(1, 5):
        k = i * np.pi
        a, b = omega[2 * i - 2], omega[2 * i - 1]
        s += a * np.sin(k * x) + b * np.cos(k * x)
        s1 += k * (a * np.cos(k * x) - b * np.sin(k * x))
        s2 += -k * k * (a * np.sin(k * x) + b * np.cos(k * x))
    w = x * x - 1.0
    u = w * s
    du = 2.0 * x * s + w * s1
    d2u = 2.0 * s + 4.0 * x * s1 + w * s2
    return u, du, d2u


def reaction_forcing(omega, x, problem: ReactionProblem = ReactionProblem()):
    """Forcing consistent with the exact solution: f = D u'' - k_r(u) u^3."""
    u, _, d2u = exact_solution_derivs(omega, np.asarray(x, dtype=np.float64))
    return problem.diffusion * d2u - reaction_rate(u, problem.rate_scale) * u**3


def reaction_residual(u_fn, k_r_fn, f_fn, x: float,
                      problem: ReactionProblem = ReactionProblem()) -> float:
    """Pointwise PDE residual D u'' - k_r u^3 - f for callables of x."""
    d2u = input_derivative(u_fn, x, 2)
    u = float(u_fn(float(x)))
    return problem.diffusion * d2u - float(k_r_fn(float(x))) * u**3 - float(f_fn(float(x)))


def draw_solution_coefficients(stream: RngStream) -> np.ndarray:
    """The eight series coefficients, each uniform on [0, 1]."""
    return stream.uniform((8,), 0.0, 1.0)
