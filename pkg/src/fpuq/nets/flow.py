"""Inverse autoregressive flow built from masked dense conditioners.

Each block permutes its input (fixed reversal), then applies
``y_k = mu_k(w_{<k}) + sigma_k(w_{<k}) * w_k`` with strictly autoregressive
masks, so the Jacobian is triangular and the log-determinant is the sum of
log scales. Conditioner output layers start at zero: the initial flow is the
identity (up to the permutations) and sampling begins at the base normal.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numcore import ParamVector, RngStream, Tensor, astensor, take_columns
from ..numcore.ops import tanh
from .mlp import _glorot

__all__ = ["IafFlow", "IafSpec", "flow_base_logpdf", "iaf_inverse",
           "iaf_log_density", "iaf_transform", "init_iaf"]

LOG_2PI = float(np.log(2.0 * np.pi))


@dataclass(frozen=True)
class IafSpec:
    dim: int
    n_blocks: int = 4
    hidden_width: int = 256
    hidden_depth: int = 2
    log_scale_clamp: float = 7.0

    def __post_init__(self):
        if self.dim < 1 or self.n_blocks < 1 or self.hidden_width < 1 or self.hidden_depth < 1:
            raise ValueError("dim, n_blocks, hidden_width, hidden_depth must be positive")


def _made_masks(dim: int, hidden_width: int, hidden_depth: int) -> list[np.ndarray]:
    """Strictly autoregressive masks: unit k of the output half depends on
    inputs of degree < k only. For dim 1 every mask is zero and the
    conditioner reduces to trainable constants."""
    deg_in = np.arange(1, dim + 1)
    max_hidden = max(dim - 1, 1)
    deg_hidden = (np.arange(hidden_width) % max_hidden) + 1
    deg_out = np.tile(np.arange(1, dim + 1), 2)  # shift and raw log-scale halves
    masks = [(deg_hidden[None, :] >= deg_in[:, None]).astype(np.float64)]
    for _ in range(hidden_depth - 1):
        masks.append((deg_hidden[None, :] >= deg_hidden[:, None]).astype(np.float64))
    masks.append((deg_out[None, :] > deg_hidden[:, None]).astype(np.float64))
    if dim == 1:
        masks = [np.zeros_like(m) for m in masks]
    return masks


@dataclass
class IafFlow:
    spec: IafSpec
    params: ParamVector  # blocks named block{i}.layer{j}.{weight,bias}
    masks: list[np.ndarray]
    permutations: list[np.ndarray]


def init_iaf(spec: IafSpec, stream: RngStream) -> IafFlow:
    masks = _made_masks(spec.dim, spec.hidden_width, spec.hidden_depth)
    widths = ([spec.dim] + [spec.hidden_width] * spec.hidden_depth + [2 * spec.dim])
    blocks: dict[str, np.ndarray] = {}
    for b in range(spec.n_blocks):
        for j, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:])):
            last = j == len(widths) - 2
            w = np.zeros((fan_in, fan_out)) if last else _glorot(stream, fan_in, fan_out)
            blocks[f"block{b}.layer{j}.weight"] = w
            blocks[f"block{b}.layer{j}.bias"] = np.zeros(fan_out)
    perms = [np.arange(spec.dim)[::-1].copy() for _ in range(spec.n_blocks)]
    return IafFlow(spec, ParamVector(blocks), masks, perms)


def _conditioner(flow: IafFlow, block: int, w, params: ParamVector):
    h = w
    n_layers = flow.spec.hidden_depth + 1
    for j in range(n_layers):
        weight = params[f"block{block}.layer{j}.weight"] * flow.masks[j]
        h = h @ weight + params[f"block{block}.layer{j}.bias"]
        if j < n_layers - 1:
            h = tanh(h)
    d = flow.spec.dim
    c = flow.spec.log_scale_clamp
    shift = h[:, :d]
    log_scale = h[:, d:]
    log_scale = log_scale.clip(-c, c) if isinstance(log_scale, Tensor) \
        else np.clip(log_scale, -c, c)
    return shift, log_scale


def iaf_transform(flow: IafFlow, z, params: ParamVector | None = None):
    """Push base samples through all blocks; returns (z_n, log_det per sample)."""
    params = params or flow.params
    if np.shape(getattr(z, "data", z))[-1] != flow.spec.dim:
        raise ValueError(f"latent width must be {flow.spec.dim}")
    y = z
    log_det = 0.0
    for b, perm in enumerate(flow.permutations):
        y = take_columns(y, perm) if isinstance(y, Tensor) else y[:, perm]
        shift, log_scale = _conditioner(flow, b, y, params)
        scale = log_scale.exp() if isinstance(log_scale, Tensor) else np.exp(log_scale)
        if not isinstance(scale, Tensor) and np.any(scale <= 0.0):
            raise ArithmeticError("non-positive flow scale")
        y = shift + scale * y
        log_det = log_det + log_scale.sum(axis=1)
    return y, log_det


def iaf_inverse(flow: IafFlow, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sequential inverse (numpy only); returns (z, log_det of the forward map)."""
    y = np.asarray(y, dtype=np.float64)
    log_det = np.zeros(y.shape[0])
    for b in reversed(range(flow.spec.n_blocks)):
        w = np.zeros_like(y)
        for k in range(flow.spec.dim):
            shift, log_scale = _conditioner(flow, b, w, flow.params)
            w[:, k] = (y[:, k] - shift[:, k]) / np.exp(log_scale[:, k])
        shift, log_scale = _conditioner(flow, b, w, flow.params)
        log_det += log_scale.sum(axis=1)
        inv = np.argsort(flow.permutations[b])
        y = w[:, inv]
    return y, log_det


def flow_base_logpdf(z):
    """Standard-normal log density per sample row."""
    d = np.shape(getattr(z, "data", z))[-1]
    return -0.5 * (z * z).sum(axis=1) - 0.5 * d * LOG_2PI


def iaf_log_density(flow: IafFlow, z, z_n, log_det):
    """log Q(z_n) for samples produced by iaf_transform(flow, z)."""
    if np.shape(getattr(z, "data", z)) != np.shape(getattr(z_n, "data", z_n)):
        raise ValueError("z and z_n must come from the same transform call")
    return flow_base_logpdf(z) - log_det
