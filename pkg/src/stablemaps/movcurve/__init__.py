"""Finite-field moving-curve checks for fat-point linear systems."""

from ._backend import BACKEND
from .config import FatPointConfig, load_config, preset, PRESETS
from .dual import DualNumber
from .oracle import finite_difference_check
from .pipeline import (MovingCurveReport, condition_matrix, derivative_orders, draw_points,
                       deformation_matrix, kernel_basis, monomial_basis, moving_curve_check, normalized_derivative,
                       pluecker, rank_modp, restrict_and_pluecker, restriction)

__all__ = [
    "BACKEND", "DualNumber", "FatPointConfig", "MovingCurveReport", "PRESETS", "condition_matrix",
    "deformation_matrix", "derivative_orders", "draw_points", "finite_difference_check", "kernel_basis", "load_config",
    "monomial_basis", "moving_curve_check", "normalized_derivative", "pluecker", "preset",
    "rank_modp", "restrict_and_pluecker", "restriction",
]
