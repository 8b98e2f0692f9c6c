"""Network architectures: MLPs, generators, DeepONets, and the IAF flow."""
from .checkpoint import load_checkpoint, save_checkpoint
from .deeponet import (DeepONet, DeepOnetTrainConfig, deeponet_batch,
                       deeponet_cross, deeponet_forward, deeponet_train,
                       init_deeponet)
from .flow import (IafFlow, IafSpec, flow_base_logpdf, iaf_inverse,
                   iaf_log_density, iaf_transform, init_iaf)
from .generator import (GeneratorNet, generator_eval, generator_grid_eval,
                        generator_x_derivs, init_generator)
from .mlp import Mlp, MlpSpec, as_scalar_fn, init_mlp, init_mlp_params, mlp_forward

__all__ = [
    "DeepONet", "DeepOnetTrainConfig", "GeneratorNet", "IafFlow", "IafSpec",
    "Mlp", "MlpSpec", "as_scalar_fn", "deeponet_batch", "deeponet_cross",
    "deeponet_forward", "deeponet_train", "flow_base_logpdf", "generator_eval",
    "generator_grid_eval", "generator_x_derivs", "iaf_inverse",
    "iaf_log_density", "iaf_transform", "init_deeponet", "init_generator",
    "init_iaf", "init_mlp", "init_mlp_params", "load_checkpoint",
    "mlp_forward", "save_checkpoint",
]
