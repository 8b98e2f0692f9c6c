"""Generator networks mapping (coordinates, latent noise) to field values."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numcore import ParamVector, RngStream, Tensor, concatenate, repeat_rows
from ..numcore.dual import Dual, seed_second_order
from .mlp import MlpSpec, init_mlp_params, mlp_forward

__all__ = ["GeneratorNet", "generator_eval", "generator_grid_eval",
           "generator_x_derivs", "init_generator"]


@dataclass
class GeneratorNet:
    spec: MlpSpec
    params: ParamVector
    latent_dim: int
    coord_dim: int

    def __post_init__(self):
        if self.spec.in_width != self.coord_dim + self.latent_dim:
            raise ValueError("generator input width must equal coord_dim + latent_dim")


def init_generator(coord_dim: int, latent_dim: int, stream: RngStream,
                   hidden_width: int = 64, hidden_depth: int = 2) -> GeneratorNet:
    spec = MlpSpec(coord_dim + latent_dim, hidden_width, hidden_depth, 1, "tanh")
    return GeneratorNet(spec, init_mlp_params(spec, stream), latent_dim, coord_dim)


def _check_widths(gen: GeneratorNet, x, xi) -> None:
    if np.shape(getattr(x, "data", x))[-1] != gen.coord_dim:
        raise ValueError(f"coordinate width must be {gen.coord_dim}")
    if np.shape(getattr(xi, "data", xi))[-1] != gen.latent_dim:
        raise ValueError(f"latent width must be {gen.latent_dim}")


def generator_eval(gen: GeneratorNet, x, xi, params: ParamVector | None = None):
    """One field value per (x, xi) row pair; shape (n,)."""
    _check_widths(gen, x, xi)
    if isinstance(x, Tensor) or isinstance(xi, Tensor):
        inp = concatenate([x, xi], axis=1)
    else:
        inp = np.concatenate([x, xi], axis=1)
    out = mlp_forward(gen.spec, params or gen.params, inp)
    return out.reshape(np.shape(getattr(out, "data", out))[0])


def _pair_grid(gen: GeneratorNet, points: np.ndarray, xi):
    """(batch*n_points, in_width) inputs pairing every xi row with every point."""
    _check_widths(gen, points, xi)
    n_points = points.shape[0]
    batch = np.shape(getattr(xi, "data", xi))[0]
    coords = np.tile(points, (batch, 1))
    if isinstance(xi, Tensor):
        lat = repeat_rows(xi, n_points)
        return concatenate([coords, lat], axis=1), batch, n_points
    lat = np.repeat(xi, n_points, axis=0)
    return np.concatenate([coords, lat], axis=1), batch, n_points


def generator_grid_eval(gen: GeneratorNet, points: np.ndarray, xi,
                        params: ParamVector | None = None):
    """Evaluate every latent draw on a fixed set of points; shape (batch, n_points)."""
    inp, batch, n_points = _pair_grid(gen, points, xi)
    out = mlp_forward(gen.spec, params or gen.params, inp)
    return out.reshape(batch, n_points)


def generator_x_derivs(gen: GeneratorNet, points: np.ndarray, xi, coord: int = 0,
                       params: ParamVector | None = None):
    """Value plus first and second derivatives along one coordinate.

    Forward-mode duals propagate the x-direction through the network, so the
    returned derivative fields remain differentiable in the parameters and in
    the latent inputs. Returns (u, du, d2u), each (batch, n_points).
    """
    inp, batch, n_points = _pair_grid(gen, points, xi)
    direction = np.zeros((batch * n_points, gen.spec.in_width))
    direction[:, coord] = 1.0
    out = mlp_forward(gen.spec, params or gen.params, seed_second_order(inp, direction))
    u = out.val.val
    du = out.val.eps
    d2u = out.eps.eps
    return (u.reshape(batch, n_points), du.reshape(batch, n_points),
            d2u.reshape(batch, n_points))
