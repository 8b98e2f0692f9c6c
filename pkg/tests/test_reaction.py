import numpy as np
import pytest
import sympy as sym

from fpuq.numcore import RngStream
from fpuq.physics import (ReactionProblem, draw_solution_coefficients,
                          exact_reaction_solution, exact_solution_derivs,
                          reaction_forcing, reaction_rate, reaction_residual)


def test_boundary_factor_kills_endpoints():
    omega = RngStream(1, "w").uniform((8,), 0.0, 1.0)
    assert exact_reaction_solution(omega, 1.0) == pytest.approx(0.0, abs=1e-14)
    assert exact_reaction_solution(omega, -1.0) == pytest.approx(0.0, abs=1e-14)


def test_single_cosine_coefficient_at_origin():
    omega = np.zeros(8)
    omega[1] = 1.0  # first cosine term
    assert exact_reaction_solution(omega, 0.0) == pytest.approx(-1.0)


def test_zero_solution_gives_zero_forcing():
    omega = np.zeros(8)
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(reaction_forcing(omega, x), 0.0, atol=1e-15)


def test_derivatives_match_sympy():
    omega = draw_solution_coefficients(RngStream(7, "omega"))
    xs = sym.symbols("x")
    series = sum(
        omega[2 * i - 2] * sym.sin(i * sym.pi * xs) + omega[2 * i - 1] * sym.cos(i * sym.pi * xs)
        for i in range(1, 5))
    u_sym = (xs**2 - 1) * series
    du_sym = sym.diff(u_sym, xs)
    d2u_sym = sym.diff(u_sym, xs, 2)
    for x0 in np.linspace(-0.9, 0.9, 7):
        u, du, d2u = exact_solution_derivs(omega, np.array([x0]))
        assert u[0] == pytest.approx(float(u_sym.subs(xs, x0)), abs=1e-12)
        assert du[0] == pytest.approx(float(du_sym.subs(xs, x0)), abs=1e-12)
        assert d2u[0] == pytest.approx(float(d2u_sym.subs(xs, x0)), abs=1e-11)


def test_forcing_matches_sympy_pipeline():
    omega = draw_solution_coefficients(RngStream(8, "omega2"))
    problem = ReactionProblem()
    xs = sym.symbols("x")
    series = sum(
        omega[2 * i - 2] * sym.sin(i * sym.pi * xs) + omega[2 * i - 1] * sym.cos(i * sym.pi * xs)
        for i in range(1, 5))
    u_sym = (xs**2 - 1) * series
    f_sym = problem.diffusion * sym.diff(u_sym, xs, 2) \
        - sym.Rational(2, 5) * sym.exp(-u_sym) * u_sym**3
    for x0 in np.linspace(-0.8, 0.8, 5):
        got = reaction_forcing(omega, np.array([x0]), problem)[0]
        assert got == pytest.approx(float(f_sym.subs(xs, x0)), abs=1e-12)


def test_residual_of_exact_triple_vanishes():
    omega = draw_solution_coefficients(RngStream(9, "omega3"))
    problem = ReactionProblem()
    u_fn = lambda x: exact_reaction_solution(omega, x)
    k_fn = lambda x: reaction_rate(exact_reaction_solution(omega, float(x)))
    f_fn = lambda x: float(reaction_forcing(omega, np.array([float(x)]), problem)[0])
    xs = RngStream(10, "pts").uniform((100,), -1.0, 1.0)
    for x0 in xs:
        assert abs(reaction_residual(u_fn, k_fn, f_fn, float(x0), problem)) < 1e-10


def test_analytic_second_derivative_matches_finite_differences():
    omega = draw_solution_coefficients(RngStream(11, "omega4"))
    h = 1e-4
    x = np.linspace(-0.9, 0.9, 9)
    up, _, _ = exact_solution_derivs(omega, x + h)
    dn, _, _ = exact_solution_derivs(omega, x - h)
    mid, _, d2u = exact_solution_derivs(omega, x)
    fd = (up - 2 * mid + dn) / h**2
    assert np.abs((d2u - fd) / fd).max() < 1e-6


def test_omega_must_have_eight_entries():
    with pytest.raises(ValueError):
        exact_reaction_solution(np.zeros(5), 0.0)
