"""Gamma and Beta functions of Cayley-Dickson numbers."""

from .algebra import (CDNumber, associator, cd_add, cd_conj, cd_inverse, cd_mul, commutator,
                      inner, ortho_decompose)
from .beta import beta, beta_commutator_check, beta_via_gamma, thm17_check
from .campbell_hausdorff import CHConfig, ch_oracle, ch_w
from .elementary import cd_cos, cd_exp, cd_ln, cd_power, cd_sin, real_power, slice_decompose, slice_lift
from .errors import CDError
from .gammafn import (GammaMethod, bernoulli_numbers, gamma, gamma_by, gamma_integral, gamma_limit,
                    hankel_gamma, hankel_reciprocal_gamma, rgamma, stirling_series)
from .notation import format_cd, parse_cd
from .quadrature import QuadratureConfig

__version__ = "0.1.0"

__all__ = [
    "CDNumber", "CDError", "CHConfig", "GammaMethod", "QuadratureConfig",
    "associator", "bernoulli_numbers", "beta", "beta_commutator_check", "beta_via_gamma",
    "cd_add", "cd_conj", "cd_cos", "cd_exp", "cd_inverse", "cd_ln", "cd_mul", "cd_power",
    "cd_sin", "ch_oracle", "ch_w", "commutator", "format_cd", "gamma", "gamma_by",
    "gamma_integral", "gamma_limit", "hankel_gamma", "hankel_reciprocal_gamma", "inner",
    "ortho_decompose", "parse_cd", "real_power", "rgamma", "slice_decompose", "slice_lift",
    "stirling_series", "thm17_check",
]
