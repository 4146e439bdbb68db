"""Numerical lab for Fourier multipliers on Hardy spaces.

Periodic grids with continuum-normalized transforms, exact Lorentz norms of
sampled fields, Littlewood-Paley pieces, smooth maximal functions and atoms,
the log-modulated sharpness family, and randomized inequality checkers.
"""

__version__ = "0.1.0"

from .grid import (Field, GridSpec, ParameterError, SpectralField, convolve, forward_transform,
                   inverse_transform, make_grid, plane_wave)
from .kernels import BACKEND
from .rearrangement import (LorentzParams, RearrangementProfile, decreasing_rearrangement,
                            distribution_function, lorentz_norm, lorentz_norm_of)
from .bumps import BumpProfile, make_bump
from .symbol import MultiplierSymbol
from .calculus import (SobolevParams, bessel_asymptotics_check, bessel_potential, fractional_laplacian,
                       h_hat_check, lorentz_sobolev_norm, mollify_symbol)
from .littlewood_paley import dyadic_piece, hormander_norm, lp_operator, square_function
from .hardy import Atom, apply_multiplier, hardy_norm, make_atom, maximal_function, operator_ratio
from .counterexample import (CaseReport, CounterParams, lower_bound_value, sharpness_case1,
                             sharpness_case2, sigma_counter, upper_bound_value)
from .inequality_lab import (CheckReport, check_embedding, check_hausdorff_young, check_holder,
                             check_kato_ponce, check_minkowski, check_young)

__all__ = [
    "BACKEND", "Atom", "BumpProfile", "CaseReport", "CheckReport", "CounterParams", "Field", "GridSpec",
    "LorentzParams", "MultiplierSymbol", "ParameterError", "RearrangementProfile", "SobolevParams",
    "SpectralField", "apply_multiplier", "bessel_asymptotics_check", "bessel_potential", "check_embedding",
    "check_hausdorff_young", "check_holder", "check_kato_ponce", "check_minkowski", "check_young",
    "convolve", "decreasing_rearrangement", "distribution_function", "dyadic_piece", "forward_transform",
    "fractional_laplacian", "h_hat_check", "hardy_norm", "hormander_norm", "inverse_transform",
    "lorentz_norm", "lorentz_norm_of", "lorentz_sobolev_norm", "lower_bound_value", "lp_operator",
    "make_atom", "make_bump", "make_grid", "maximal_function", "mollify_symbol", "operator_ratio",
    "plane_wave", "sharpness_case1", "sharpness_case2", "sigma_counter", "square_function",
    "upper_bound_value",
]
