"""Bias-corrected Adam on flattened parameter vectors."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .params import ParamVector

__all__ = ["AdamState", "adam_step", "init_adam"]


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    lr: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


def init_adam(params: ParamVector, lr: float = 1e-4, beta1: float = 0.9,
              beta2: float = 0.999, eps: float = 1e-8) -> AdamState:
    n = params.flatten().size
    return AdamState(m=np.zeros(n), v=np.zeros(n), t=0,
                     lr=lr, beta1=beta1, beta2=beta2, eps=eps)


def adam_step(params: ParamVector, grads: ParamVector,
              state: AdamState) -> tuple[ParamVector, AdamState]:
    p = params.flatten()
    g = grads.flatten()
    if p.shape != g.shape or p.shape != state.m.shape:
        raise ValueError(
            f"shape mismatch: params {p.shape}, grads {g.shape}, state {state.m.shape}")
    t = state.t + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * g
    v = state.beta2 * state.v + (1.0 - state.beta2) * g * g
    m_hat = m / (1.0 - state.beta1**t)
    v_hat = v / (1.0 - state.beta2**t)
    p = p - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return params.unflatten(p), replace(state, m=m, v=v, t=t)
