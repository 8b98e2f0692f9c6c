"""Branch/trunk operator networks trained on (function, point, value) triples."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from ..numcore import (ParamVector, RngStream, Tensor, adam_step, grad_params,
                       init_adam)
from ..numcore.tensor import NonFiniteError
from .mlp import MlpSpec, init_mlp_params, mlp_forward

__all__ = ["DeepONet", "DeepOnetTrainConfig", "deeponet_batch", "deeponet_cross",
           "deeponet_forward", "deeponet_train", "init_deeponet"]


@dataclass
class DeepONet:
    branch_spec: MlpSpec
    trunk_spec: MlpSpec
    params: ParamVector  # blocks named branch.* / trunk.*
    sensor_grid: Any = None  # SensorGrid the branch inputs are resolved on

    def __post_init__(self):
        if self.branch_spec.out_width != self.trunk_spec.out_width:
            raise ValueError("branch and trunk output widths must match")

    @property
    def n_sensors(self) -> int:
        return self.branch_spec.in_width

    @property
    def interaction_width(self) -> int:
        return self.branch_spec.out_width


def init_deeponet(n_sensors: int, coord_dim: int, stream: RngStream,
                  interaction_width: int = 64, hidden_width: int = 128,
                  hidden_depth: int = 2, sensor_grid=None) -> DeepONet:
    branch = MlpSpec(n_sensors, hidden_width, hidden_depth, interaction_width, "tanh")
    trunk = MlpSpec(coord_dim, hidden_width, hidden_depth, interaction_width, "tanh")
    params = ParamVector.merge({
        "branch": init_mlp_params(branch, stream.split("branch")),
        "trunk": init_mlp_params(trunk, stream.split("trunk")),
    })
    return DeepONet(branch, trunk, params, sensor_grid)


def _split_params(net: DeepONet, params: ParamVector | None):
    pv = params or net.params
    return pv.select("branch"), pv.select("trunk")


def deeponet_cross(net: DeepONet, sensors, points, params: ParamVector | None = None):
    """Inner product of branch and trunk outputs for every (sample, point) pair.

    sensors: (batch, m) function values; points: (q, coord_dim).
    Returns (batch, q).
    """
    if np.shape(getattr(sensors, "data", sensors))[-1] != net.n_sensors:
        raise ValueError(f"expected {net.n_sensors} sensor values")
    bp, tp = _split_params(net, params)
    b = mlp_forward(net.branch_spec, bp, sensors)   # (batch, p)
    t = mlp_forward(net.trunk_spec, tp, points)     # (q, p)
    return b @ t.T


def deeponet_forward(net: DeepONet, sensors, x, params: ParamVector | None = None) -> float:
    """Operator output at one query point for one input function."""
    sensors = np.asarray(sensors, dtype=np.float64).reshape(1, -1)
    x = np.asarray(x, dtype=np.float64).reshape(1, -1)
    out = deeponet_cross(net, sensors, x, params)
    return float(np.asarray(getattr(out, "data", out)).reshape(()))


def deeponet_batch(net: DeepONet, sensors, points, params: ParamVector | None = None):
    """Row-paired evaluation: i-th sensor set at i-th point; returns (batch,)."""
    bp, tp = _split_params(net, params)
    b = mlp_forward(net.branch_spec, bp, sensors)
    t = mlp_forward(net.trunk_spec, tp, points)
    return (b * t).sum(axis=1)


@dataclass
class DeepOnetTrainConfig:
    steps: int = 5000
    batch_size: int = 256
    lr: float = 1e-4
    holdout_fraction: float = 0.1
    log_every: int = 100


def deeponet_train(net: DeepONet, sensors: np.ndarray, points: np.ndarray,
                   targets: np.ndarray, config: DeepOnetTrainConfig,
                   stream: RngStream) -> tuple[DeepONet, dict]:
    """Minimize MSE over (sensors, point, value) triples with Adam.

    Returns the trained net and a history dict with train/holdout losses.
    """
    n = sensors.shape[0]
    if n == 0:
        raise ValueError("empty training set")
    perm = stream.split("holdout").permutation(n)
    n_hold = max(1, int(round(config.holdout_fraction * n))) if n > 1 else 0
    hold, train = perm[:n_hold], perm[n_hold:]
    if train.size == 0:
        train, hold = perm, perm[:0]

    params = net.params.copy()
    state = init_adam(params, lr=config.lr)
    batches = stream.split("batches")
    history: dict[str, list] = {"step": [], "train_mse": [], "holdout_mse": []}

    def mse_on(pv: ParamVector, idx: np.ndarray):
        pred = deeponet_batch(net, sensors[idx], points[idx], pv)
        resid = pred - targets[idx]
        return (resid * resid).mean()

    for step in range(config.steps):
        idx = train[batches.integers(train.size, (min(config.batch_size, train.size),))]
        loss_val = [np.nan]

        def objective(pv: ParamVector) -> Tensor:
            loss = mse_on(pv, idx)
            loss_val[0] = float(loss.data)
            return loss

        grads = grad_params(objective, params)
        if not np.isfinite(loss_val[0]):
            raise NonFiniteError(f"training loss became non-finite at step {step}")
        params, state = adam_step(params, grads, state)
        if step % config.log_every == 0 or step == config.steps - 1:
            history["step"].append(step)
            history["train_mse"].append(loss_val[0])
            if hold.size:
                with_np = float(getattr(mse_on(params, hold), "data", np.nan))
                history["holdout_mse"].append(with_np)
            else:
                history["holdout_mse"].append(loss_val[0])

    trained = DeepONet(net.branch_spec, net.trunk_spec, params, net.sensor_grid)
    return trained, history
