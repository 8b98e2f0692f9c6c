"""Dense multilayer perceptrons with Glorot-uniform initialization."""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from ..numcore import ParamVector, RngStream, ops

__all__ = ["Mlp", "MlpSpec", "as_scalar_fn", "init_mlp", "init_mlp_params", "mlp_forward"]

_ACTIVATIONS = ("tanh", "leaky_relu")


@dataclass(frozen=True)
class MlpSpec:
    in_width: int
    hidden_width: int
    hidden_depth: int
    out_width: int
    activation: str = "tanh"
    leaky_slope: float = 0.2

    def __post_init__(self):
        if min(self.in_width, self.hidden_width, self.hidden_depth, self.out_width) < 1:
            raise ValueError("widths and depth must be positive")
        if self.activation not in _ACTIVATIONS:
            raise ValueError(f"activation must be one of {_ACTIVATIONS}, got {self.activation!r}")

    @property
    def layer_shapes(self) -> list[tuple[int, int]]:
        widths = [self.in_width] + [self.hidden_width] * self.hidden_depth + [self.out_width]
        return list(zip(widths[:-1], widths[1:]))


def _glorot(stream: RngStream, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return stream.uniform((fan_in, fan_out), -limit, limit)


def init_mlp_params(spec: MlpSpec, stream: RngStream) -> ParamVector:
    blocks = {}
    for i, (fan_in, fan_out) in enumerate(spec.layer_shapes):
        blocks[f"layer{i}.weight"] = _glorot(stream, fan_in, fan_out)
        blocks[f"layer{i}.bias"] = np.zeros(fan_out)
    return ParamVector(blocks)


def mlp_forward(spec: MlpSpec, params: ParamVector, x):
    """Affine layers interleaved with the activation; final layer linear.

    `x` is a (batch, in_width) array, tensor, or dual thereof.
    """
    width = np.shape(getattr(x, "data", x))[-1] if not hasattr(x, "val") else _dual_width(x)
    if width != spec.in_width:
        raise ValueError(f"input width {width} does not match spec in_width {spec.in_width}")
    if spec.activation == "tanh":
        act = ops.tanh
    else:
        act = partial(ops.leaky_relu, slope=spec.leaky_slope)
    n_layers = spec.hidden_depth + 1
    h = x
    for i in range(n_layers):
        h = h @ params[f"layer{i}.weight"] + params[f"layer{i}.bias"]
        if i < n_layers - 1:
            h = act(h)
    return h


def _dual_width(x) -> int:
    while hasattr(x, "val"):
        x = x.val
    return np.shape(getattr(x, "data", x))[-1]


@dataclass
class Mlp:
    """A spec/params pair; the form discriminators and sub-nets take."""
    spec: MlpSpec
    params: ParamVector

    def __call__(self, x):
        return mlp_forward(self.spec, self.params, x)


def init_mlp(spec: MlpSpec, stream: RngStream) -> Mlp:
    return Mlp(spec, init_mlp_params(spec, stream))


def _lift_scalar(x):
    from ..numcore.dual import Dual
    if isinstance(x, Dual):
        return Dual(_lift_scalar(x.val), _lift_scalar(x.eps))
    return np.array([[float(x)]])


def _unlift_scalar(y):
    from ..numcore.dual import Dual
    if isinstance(y, Dual):
        return Dual(_unlift_scalar(y.val), _unlift_scalar(y.eps))
    return float(np.asarray(getattr(y, "data", y)).reshape(()))


def as_scalar_fn(net: Mlp):
    """View a width-1 network as a real -> real map that honours duals."""
    if net.spec.in_width != 1 or net.spec.out_width != 1:
        raise ValueError("as_scalar_fn needs a 1 -> 1 network")

    def fn(x):
        return _unlift_scalar(net(_lift_scalar(x)))

    return fn
