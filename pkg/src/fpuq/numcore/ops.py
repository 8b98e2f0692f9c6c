"""Pointwise math that dispatches across numpy arrays, tensors, and duals."""
from __future__ import annotations

import numpy as np

from .dual import Dual
from .tensor import Tensor

__all__ = ["cos", "exp", "leaky_relu", "log", "sin", "sqrt", "tanh"]


def tanh(x):
    if isinstance(x, Tensor):
        return x.tanh()
    if isinstance(x, Dual):
        t = tanh(x.val)
        return Dual(t, (1.0 - t * t) * x.eps)
    return np.tanh(x)


def exp(x):
    if isinstance(x, Tensor):
        return x.exp()
    if isinstance(x, Dual):
        e = exp(x.val)
        return Dual(e, e * x.eps)
    return np.exp(x)


def log(x):
    if isinstance(x, Tensor):
        return x.log()
    if isinstance(x, Dual):
        return Dual(log(x.val), x.eps / x.val)
    return np.log(x)


def sin(x):
    if isinstance(x, Tensor):
        return x.sin()
    if isinstance(x, Dual):
        return Dual(sin(x.val), cos(x.val) * x.eps)
    return np.sin(x)


def cos(x):
    if isinstance(x, Tensor):
        return x.cos()
    if isinstance(x, Dual):
        return Dual(cos(x.val), -sin(x.val) * x.eps)
    return np.cos(x)


def sqrt(x):
    if isinstance(x, Tensor):
        return x.sqrt()
    if isinstance(x, Dual):
        s = sqrt(x.val)
        return Dual(s, x.eps * (0.5 / s))
    return np.sqrt(x)


def _primal(x):
    while isinstance(x, Dual):
        x = x.val
    return x.data if isinstance(x, Tensor) else x


def leaky_relu(x, slope: float = 0.2):
    if isinstance(x, Tensor):
        return x.leaky_relu(slope)
    if isinstance(x, Dual):
        # piecewise-linear: second and higher input derivatives vanish a.e.
        mask = np.where(_primal(x) > 0.0, 1.0, slope)
        return x * mask
    return np.where(x > 0.0, x, slope * x)
