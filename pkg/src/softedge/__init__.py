"""Finite-N Gaussian ensemble densities and their soft-edge expansions."""
from .algebra import AiryCombo, RationalPoly
from .ensembles import EnsembleSpec, gue_density_raw, scaling_map, semicircle, soft_edge_density
from .expansion import R0, ExpansionSeries, compute_series, eval_combo, solve_order
from .laplace import laplace_numeric, u0_closed
from .mc import sample_dense, sample_tridiagonal
from .moments import moment_closed_form, moment_quadrature

__version__ = "0.1.0"

__all__ = [
    "AiryCombo", "RationalPoly", "EnsembleSpec", "gue_density_raw", "scaling_map", "semicircle",
    "soft_edge_density", "R0", "ExpansionSeries", "compute_series", "eval_combo", "solve_order",
    "laplace_numeric", "u0_closed", "sample_dense", "sample_tridiagonal", "moment_closed_form",
    "moment_quadrature",
]
