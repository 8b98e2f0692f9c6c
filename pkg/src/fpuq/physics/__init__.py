"""Ground-truth generators and physical operators for the benchmark problems."""
from .darcy import (DarcyProblem, darcy_solve, restrict_vertex_grid,
                    unit_grid_axes, unit_grid_points)
from .gp import SEKernel, gp_sample
from .kl import KLField, kl_decompose, kl_eval, kl_sample
from .reaction import (ReactionProblem, draw_solution_coefficients,
                       exact_reaction_solution, exact_solution_derivs,
                       reaction_forcing, reaction_rate, reaction_residual)

__all__ = [
    "DarcyProblem", "KLField", "ReactionProblem", "SEKernel", "darcy_solve",
    "draw_solution_coefficients", "exact_reaction_solution",
    "exact_solution_derivs", "gp_sample", "kl_decompose", "kl_eval",
    "kl_sample", "reaction_forcing", "reaction_rate", "reaction_residual",
    "restrict_vertex_grid", "unit_grid_axes", "unit_grid_points",
]
