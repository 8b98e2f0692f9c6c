"""Reverse-mode automatic differentiation over dense float64 arrays.

A ``Tensor`` wraps a numpy array and records the operation that produced it.
Backward passes are themselves written in terms of the same primitives, so
differentiating through a gradient (double backprop, as needed by gradient
penalties) works without special cases.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

RealArray = np.ndarray  # 64-bit, row-major carrier used throughout the package

__all__ = [
    "NonFiniteError",
    "RealArray",
    "Tensor",
    "astensor",
    "backward",
    "concatenate",
    "no_grad",
    "repeat_rows",
    "take_columns",
]


class NonFiniteError(ArithmeticError):
    """An evaluation or differentiation produced NaN/Inf values."""


_GRAD_ENABLED = [True]


class no_grad:
    """Context manager that pauses graph recording."""

    def __enter__(self):
        self._prev = _GRAD_ENABLED[0]
        _GRAD_ENABLED[0] = False
        return self

    def __exit__(self, *exc):
        _GRAD_ENABLED[0] = self._prev
        return False


class Tensor:
    __slots__ = ("data", "requires_grad", "_parents", "_vjp")

    # keep numpy from consuming us in mixed expressions; our r-ops run instead
    __array_ufunc__ = None
    _is_dual_number = False

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.asarray(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self._parents: tuple[Tensor, ...] = ()
        self._vjp: Callable | None = None

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    def item(self) -> float:
        return float(self.data)

    def __repr__(self) -> str:
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if getattr(other, "_is_dual_number", False):
            return NotImplemented
        return _add(self, astensor(other))

    __radd__ = __add__

    def __sub__(self, other):
        if getattr(other, "_is_dual_number", False):
            return NotImplemented
        return _sub(self, astensor(other))

    def __rsub__(self, other):
        return _sub(astensor(other), self)

    def __mul__(self, other):
        if getattr(other, "_is_dual_number", False):
            return NotImplemented
        return _mul(self, astensor(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if getattr(other, "_is_dual_number", False):
            return NotImplemented
        return _div(self, astensor(other))

    def __rtruediv__(self, other):
        return _div(astensor(other), self)

    def __neg__(self):
        return _op(-self.data, (self,), lambda g: (-g,))

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, float)):
            raise TypeError("Tensor ** supports constant scalar exponents only")
        c = float(exponent)
        out = _op(self.data**c, (self,), lambda g: (g * (c * self**(c - 1.0)),))
        return out

    def __matmul__(self, other):
        if getattr(other, "_is_dual_number", False):
            return NotImplemented
        return matmul(self, astensor(other))

    def __rmatmul__(self, other):
        return matmul(astensor(other), self)

    def __getitem__(self, idx):
        return _op(self.data[idx], (self,), lambda g: (_unslice(g, idx, self.data.shape),))

    # -- shape ops ----------------------------------------------------------

    @property
    def T(self) -> "Tensor":
        if self.data.ndim != 2:
            raise ValueError("T is defined for 2-D tensors only")
        return _op(self.data.T, (self,), lambda g: (g.T,))

    def reshape(self, *shape) -> "Tensor":
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        old = self.data.shape
        return _op(self.data.reshape(shape), (self,), lambda g: (g.reshape(old),))

    # -- reductions ---------------------------------------------------------

    def sum(self, axis=None, keepdims: bool = False) -> "Tensor":
        shape = self.data.shape

        def vjp(g):
            return (_expand(g, shape, axis, keepdims),)

        return _op(np.sum(self.data, axis=axis, keepdims=keepdims), (self,), vjp)

    def mean(self, axis=None, keepdims: bool = False) -> "Tensor":
        n = self.data.size if axis is None else np.prod(
            [self.data.shape[a] for a in _normalize_axis(axis, self.data.ndim)]
        )
        return self.sum(axis=axis, keepdims=keepdims) * (1.0 / float(n))

    # -- pointwise nonlinearities --------------------------------------------

    def tanh(self) -> "Tensor":
        out_data = np.tanh(self.data)
        out = _op(out_data, (self,), None)
        if out._parents:
            out._vjp = lambda g: (g * (1.0 - out * out),)
        return out

    def exp(self) -> "Tensor":
        out = _op(np.exp(self.data), (self,), None)
        if out._parents:
            out._vjp = lambda g: (g * out,)
        return out

    def log(self) -> "Tensor":
        return _op(np.log(self.data), (self,), lambda g: (g / self,))

    def sqrt(self) -> "Tensor":
        out = _op(np.sqrt(self.data), (self,), None)
        if out._parents:
            out._vjp = lambda g: (g * (0.5 / out),)
        return out

    def sin(self) -> "Tensor":
        return _op(np.sin(self.data), (self,), lambda g: (g * self.cos(),))

    def cos(self) -> "Tensor":
        return _op(np.cos(self.data), (self,), lambda g: (-g * self.sin(),))

    def clip(self, lo: float, hi: float) -> "Tensor":
        mask = ((self.data > lo) & (self.data < hi)).astype(np.float64)
        return _op(np.clip(self.data, lo, hi), (self,), lambda g: (g * mask,))

    def leaky_relu(self, slope: float = 0.2) -> "Tensor":
        mask = np.where(self.data > 0.0, 1.0, slope)
        return _op(np.where(self.data > 0.0, self.data, slope * self.data),
                   (self,), lambda g: (g * mask,))


def astensor(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


# -- primitive plumbing ------------------------------------------------------


def _op(data, parents: tuple[Tensor, ...], vjp) -> Tensor:
    out = Tensor.__new__(Tensor)
    out.data = np.asarray(data, dtype=np.float64)
    if _GRAD_ENABLED[0] and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = parents
        out._vjp = vjp
    else:
        out.requires_grad = False
        out._parents = ()
        out._vjp = None
    return out


def _normalize_axis(axis, ndim: int) -> tuple[int, ...]:
    if axis is None:
        return tuple(range(ndim))
    if isinstance(axis, int):
        axis = (axis,)
    return tuple(a % ndim for a in axis)


def _unbroadcast(g: Tensor, shape: tuple[int, ...]) -> Tensor:
    """Sum `g` down to `shape` (inverse of numpy broadcasting)."""
    if g.data.shape == shape:
        return g
    extra = g.data.ndim - len(shape)
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and g.data.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    if g.data.shape != shape:
        g = g.reshape(shape)
    return g


def _expand(g: Tensor, shape: tuple[int, ...], axis, keepdims: bool) -> Tensor:
    """Broadcast a summed gradient back to the pre-reduction shape."""
    if axis is not None and not keepdims:
        kept = list(shape)
        for a in _normalize_axis(axis, len(shape)):
            kept[a] = 1
        g = g.reshape(tuple(kept))
    return g * np.ones(shape)


def _add(a: Tensor, b: Tensor) -> Tensor:
    return _op(a.data + b.data, (a, b),
               lambda g: (_unbroadcast(g, a.data.shape), _unbroadcast(g, b.data.shape)))


def _sub(a: Tensor, b: Tensor) -> Tensor:
    return _op(a.data - b.data, (a, b),
               lambda g: (_unbroadcast(g, a.data.shape), _unbroadcast(-g, b.data.shape)))


def _mul(a: Tensor, b: Tensor) -> Tensor:
    return _op(a.data * b.data, (a, b),
               lambda g: (_unbroadcast(g * b, a.data.shape), _unbroadcast(g * a, b.data.shape)))


def _div(a: Tensor, b: Tensor) -> Tensor:
    return _op(a.data / b.data, (a, b),
               lambda g: (_unbroadcast(g / b, a.data.shape),
                          _unbroadcast(-g * a / (b * b), b.data.shape)))


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.data.ndim != 2 or b.data.ndim != 2:
        raise ValueError(f"matmul expects 2-D operands, got {a.data.shape} @ {b.data.shape}")
    if a.data.shape[1] != b.data.shape[0]:
        raise ValueError(f"matmul shape mismatch: {a.data.shape} @ {b.data.shape}")
    return _op(a.data @ b.data, (a, b), lambda g: (g @ b.T, a.T @ g))


def _unslice(g: Tensor, idx, shape: tuple[int, ...]) -> Tensor:
    data = np.zeros(shape)
    data[idx] = g.data
    return _op(data, (g,), lambda gg: (gg[idx],))


def concatenate(parts: Sequence, axis: int = 0) -> Tensor:
    parts = [astensor(p) for p in parts]
    data = np.concatenate([p.data for p in parts], axis=axis)
    sizes = [p.data.shape[axis] for p in parts]

    def vjp(g):
        outs, start = [], 0
        for n in sizes:
            idx = [slice(None)] * g.data.ndim
            idx[axis] = slice(start, start + n)
            outs.append(g[tuple(idx)])
            start += n
        return tuple(outs)

    return _op(data, tuple(parts), vjp)


def take_columns(t: Tensor, cols: np.ndarray) -> Tensor:
    """Column gather `t[:, cols]` with a scatter-add adjoint."""
    t = astensor(t)
    cols = np.asarray(cols, dtype=np.intp)
    ncols = t.data.shape[1]
    return _op(t.data[:, cols], (t,), lambda g: (_put_columns(g, cols, ncols),))


def _put_columns(g: Tensor, cols: np.ndarray, ncols: int) -> Tensor:
    data = np.zeros((g.data.shape[0], ncols))
    np.add.at(data, (slice(None), cols), g.data)
    return _op(data, (g,), lambda gg: (take_columns(gg, cols),))


def repeat_rows(t: Tensor, k: int) -> Tensor:
    """Repeat each row k times; adjoint sums the repeated copies."""
    t = astensor(t)
    n, m = t.data.shape
    return _op(np.repeat(t.data, k, axis=0), (t,),
               lambda g: (g.reshape(n, k, m).sum(axis=1),))


# -- backward pass ------------------------------------------------------------


def _topo(out: Tensor) -> list[Tensor]:
    order: list[Tensor] = []
    seen: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(out, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in node._parents:
            if p.requires_grad and id(p) not in seen:
                stack.append((p, False))
    return order


def backward(out: Tensor, wrt: Sequence[Tensor], create_graph: bool = False) -> list[Tensor]:
    """Cotangents of a scalar `out` with respect to each tensor in `wrt`.

    With ``create_graph=True`` the returned gradients are themselves
    recorded, so they can be differentiated again.
    """
    if out.data.size != 1:
        raise ValueError("backward expects a scalar output")
    wanted = {id(w) for w in wrt}
    cot: dict[int, Tensor] = {id(out): astensor(np.ones_like(out.data))}
    kept: dict[int, Tensor] = {}
    if id(out) in wanted:
        kept[id(out)] = cot[id(out)]
    prev = _GRAD_ENABLED[0]
    _GRAD_ENABLED[0] = bool(create_graph)
    try:
        for node in reversed(_topo(out)):
            g = cot.pop(id(node), None)
            if g is None:
                continue
            if id(node) in wanted:
                kept[id(node)] = g
            if node._vjp is None:
                continue
            for parent, pg in zip(node._parents, node._vjp(g)):
                if pg is None or not parent.requires_grad:
                    continue
                acc = cot.get(id(parent))
                cot[id(parent)] = pg if acc is None else acc + pg
    finally:
        _GRAD_ENABLED[0] = prev
    return [kept.get(id(w), astensor(np.zeros_like(w.data))) for w in wrt]
