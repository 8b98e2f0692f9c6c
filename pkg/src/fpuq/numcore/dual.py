"""Forward-mode duals, nestable for exact second input-derivatives.

Components may be floats, numpy arrays, reverse-mode tensors, or other duals,
so derivative values stay differentiable with respect to network parameters.
"""
from __future__ import annotations

__all__ = ["Dual", "input_derivative", "seed_second_order"]


class Dual:
    __slots__ = ("val", "eps")

    __array_ufunc__ = None
    _is_dual_number = True

    def __init__(self, val, eps):
        self.val = val
        self.eps = eps

    def __repr__(self) -> str:
        return f"Dual(val={self.val!r}, eps={self.eps!r})"

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.eps + other.eps)
        return Dual(self.val + other, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.eps - other.eps)
        return Dual(self.val - other, self.eps)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.eps)

    def __neg__(self):
        return Dual(-self.val, -self.eps)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val, self.val * other.eps + self.eps * other.val)
        return Dual(self.val * other, self.eps * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = other.val * other.val
            return Dual(self.val / other.val,
                        (self.eps * other.val - self.val * other.eps) / inv)
        return Dual(self.val / other, self.eps / other)

    def __rtruediv__(self, other):
        return Dual(other, 0.0 * self.eps) / self

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, float)):
            raise TypeError("Dual ** supports constant scalar exponents only")
        c = float(exponent)
        return Dual(self.val**c, (c * self.val**(c - 1.0)) * self.eps)

    def __matmul__(self, other):
        if isinstance(other, Dual):
            raise TypeError("matmul with a dual right operand is not supported")
        return Dual(self.val @ other, self.eps @ other)


def seed_second_order(x, direction):
    """Lift `x` so that f(lifted).eps.eps is the second derivative along `direction`."""
    zero = 0.0 * direction
    return Dual(Dual(x, direction), Dual(direction, zero))


def input_derivative(fn, x: float, order: int) -> float:
    """Exact derivative of a scalar function at `x` via (nested) duals."""
    if order == 1:
        out = fn(Dual(float(x), 1.0))
        return float(out.eps) if isinstance(out, Dual) else 0.0
    if order == 2:
        out = fn(seed_second_order(float(x), 1.0))
        if not isinstance(out, Dual):
            return 0.0
        inner = out.eps
        return float(inner.eps) if isinstance(inner, Dual) else 0.0
    raise ValueError(f"derivative order must be 1 or 2, got {order}")
