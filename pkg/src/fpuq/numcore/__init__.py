"""Numerical core: arrays, differentiation, Adam, and random streams."""
from .adam import AdamState, adam_step, init_adam
from .dual import Dual, input_derivative, seed_second_order
from .params import ParamVector, grad_params
from .rng import RngStream, draw_normal, draw_uniform
from .tensor import (NonFiniteError, RealArray, Tensor, astensor, backward,
                     concatenate, no_grad, repeat_rows, take_columns)

__all__ = [
    "AdamState", "Dual", "NonFiniteError", "ParamVector", "RealArray",
    "RngStream", "Tensor", "adam_step", "astensor", "backward", "concatenate",
    "draw_normal", "draw_uniform", "grad_params", "init_adam",
    "input_derivative", "no_grad", "repeat_rows", "seed_second_order",
    "take_columns",
]
