import numpy as np
import pytest

from fpuq.numcore import ParamVector


def fd_gradient(scalar_fn, params: ParamVector, h: float = 1e-5) -> ParamVector:
    """Central finite differences of a scalar function of a ParamVector."""
    flat = params.flatten()
    g = np.zeros_like(flat)
    for i in range(flat.size):
        up, dn = flat.copy(), flat.copy()
        up[i] += h
        dn[i] -= h
        g[i] = (scalar_fn(params.unflatten(up)) - scalar_fn(params.unflatten(dn))) / (2 * h)
    return params.unflatten(g)


def fd_value_derivs(fn, x: float, h: float = 1e-3) -> tuple[float, float]:
    """Central first/second differences of a scalar function."""
    f_p, f_0, f_m = fn(x + h), fn(x), fn(x - h)
    return (f_p - f_m) / (2 * h), (f_p - 2 * f_0 + f_m) / (h * h)


@pytest.fixture
def fd():
    return fd_gradient


@pytest.fixture
def fd2():
    return fd_value_derivs
