"""fpuq: functional-prior uncertainty quantification.

Two-stage pipeline: adversarially learned neural functional priors (WGAN-GP,
physics-informed variants, operator composition), then posterior estimation in
the latent space via normalizing-flow variational inference, cross-checked
against a No-U-Turn HMC baseline.
"""

__version__ = "0.1.0"
