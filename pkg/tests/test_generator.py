import numpy as np
import pytest

from fpuq.numcore import RngStream, Tensor, backward
from fpuq.nets import (generator_eval, generator_grid_eval, generator_x_derivs,
                       init_generator)


@pytest.fixture
def gen():
    return init_generator(coord_dim=1, latent_dim=4, stream=RngStream(5, "gen"))


def test_fixed_latent_gives_deterministic_trace(gen):
    x = np.linspace(-1, 1, 9)[:, None]
    xi = np.tile(RngStream(6, "xi").normal((1, 4)), (9, 1))
    a = generator_eval(gen, x, xi)
    b = generator_eval(gen, x, xi)
    np.testing.assert_array_equal(a, b)
    assert a.shape == (9,)


def test_distinct_latents_give_distinct_traces(gen):
    points = np.linspace(-1, 1, 15)[:, None]
    xi = RngStream(7, "xi2").normal((2, 4))
    traces = generator_grid_eval(gen, points, xi)
    assert np.abs(traces[0] - traces[1]).max() > 1e-6


def test_grid_eval_matches_pairwise_eval(gen):
    points = np.linspace(-1, 1, 5)[:, None]
    xi = RngStream(8, "xi3").normal((3, 4))
    grid = generator_grid_eval(gen, points, xi)
    for b in range(3):
        rows = generator_eval(gen, points, np.tile(xi[b], (5, 1)))
        np.testing.assert_allclose(grid[b], rows, atol=1e-14)


def test_x_derivative_matches_finite_differences(gen):
    points = np.array([[0.3], [-0.4]])
    xi = RngStream(9, "xi4").normal((2, 4))
    u, du, d2u = generator_x_derivs(gen, points, xi)
    h = 1e-4
    up = generator_grid_eval(gen, points + h, xi)
    dn = generator_grid_eval(gen, points - h, xi)
    mid = generator_grid_eval(gen, points, xi)
    fd1 = (up - dn) / (2 * h)
    fd2 = (up - 2 * mid + dn) / h**2
    assert np.abs((du - fd1) / fd1).max() < 1e-4
    assert np.abs((d2u - fd2) / fd2).max() < 1e-3
    np.testing.assert_allclose(u, mid, atol=1e-14)


def test_latent_width_mismatch(gen):
    with pytest.raises(ValueError, match="latent"):
        generator_eval(gen, np.zeros((2, 1)), np.zeros((2, 3)))


def test_differentiable_in_latent_inputs(gen):
    points = np.linspace(-1, 1, 4)[:, None]
    xi = Tensor(RngStream(10, "xi5").normal((2, 4)), requires_grad=True)
    out = generator_grid_eval(gen, points, xi)
    (g,) = backward(out.sum(), [xi])
    assert g.data.shape == (2, 4)
    assert np.abs(g.data).max() > 0
