"""Laplace transforms u_j(gamma) = int e^{gamma y} r_j(y) dy of expansion terms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import AiryCombo
from .expansion import ExpansionSeries, eval_combo
from .specfun import QuadratureSpec, adaptive_integrate

__all__ = [
    "LaplaceValue",
    "u0_closed",
    "u0_closed_derivative",
    "laplace_numeric",
    "recursion_terms",
    "recursion_residual",
    "REFERENCE_FIRST_DERIVATIVE_COEFF",
    "DERIVED_FIRST_DERIVATIVE_COEFF",
]

# Coefficient of u_{j-1}' on the right of the first-order recursion.  Integrating
# y^2 f' - y f against e^{gamma y} by parts gives -gamma U'' - 3 U'; the value 1
# is the reference form, kept so it can be evaluated for comparison.
DERIVED_FIRST_DERIVATIVE_COEFF = 3
REFERENCE_FIRST_DERIVATIVE_COEFF = 1


@dataclass(frozen=True)
class LaplaceValue:
    gamma: float
    value: float
    order: int
    method: str  # "closedForm" or "quadrature"

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive for convergence")


def _check_gamma(gamma):
    if not gamma > 0:
        raise ValueError("gamma must be positive")


def u0_closed(gamma: float) -> float:
    """exp(gamma^3/12) / (2 sqrt(pi) gamma^{3/2})."""
    _check_gamma(gamma)
    return math.exp(gamma**3 / 12.0) / (2.0 * math.sqrt(math.pi) * gamma**1.5)


def u0_closed_derivative(gamma: float) -> float:
    return u0_closed(gamma) * (gamma**2 / 4.0 - 1.5 / gamma)


def _limits(c: AiryCombo, gamma: float, k: int, tol: float) -> tuple[float, float]:
    # |Ai(-t)|, |Ai'(-t)| <= t^{1/4} for t >= 1, so the lower tail is bounded by
    # a polynomial times e^{gamma y}; the upper tail decays like exp(-4/3 y^{3/2}).
    deg = max(c.max_degree, 0) + k + 1
    coef = sum(abs(float(v)) for poly in (c.p, c.q, c.s) for v in poly.coeffs) or 1.0
    lo = -1.0
    while coef * abs(lo) ** deg * math.exp(gamma * lo) / gamma >= tol / 100.0:
        lo *= 1.25
    hi = 1.0
    while coef * hi**deg * math.exp(gamma * hi - 4.0 / 3.0 * hi**1.5) >= tol / 100.0:
        hi *= 1.25
    return lo, hi


def laplace_numeric(c: AiryCombo, gamma: float, moment_weight: int = 0, abs_tol: float = 1e-10) -> float:
    """int y^k e^{gamma y} c(y) dy by adaptive quadrature over a truncated range.

    ``moment_weight`` k in {0, 1, 2} gives the k-th gamma-derivative of the
    transform.  Initial panels on the oscillatory left tail are sized to the
    local Airy half-wavelength pi / sqrt|y|.
    """
    _check_gamma(gamma)
    if moment_weight not in (0, 1, 2):
        raise ValueError("moment_weight must be 0, 1 or 2")
    if c.is_zero():
        return 0.0
    lo, hi = _limits(c, gamma, moment_weight, abs_tol)
    breaks = [0.0]
    t = 0.0
    while t > lo:
        t -= 2.0 * math.pi / math.sqrt(max(abs(t), 1.0))
        breaks.append(t)
    breaks = [b for b in breaks if lo < b < hi]

    def f(y):
        return y**moment_weight * np.exp(gamma * y) * eval_combo(c, y)

    spec = QuadratureSpec(abs_tol=abs_tol, rel_tol=1e-13, initial_panels=4)
    return adaptive_integrate(f, lo, hi, spec, points=breaks)


def recursion_terms(j: int, gamma: float, series: ExpansionSeries, d1_coeff: float = DERIVED_FIRST_DERIVATIVE_COEFF):
    """The four terms 4 gamma u_j', (6 - gamma^3) u_j, gamma u_{j-1}'', d1 u_{j-1}'."""
    _check_gamma(gamma)
    cur = series.terms[j]
    t1 = 4.0 * gamma * laplace_numeric(cur, gamma, 1)
    t0 = (6.0 - gamma**3) * laplace_numeric(cur, gamma, 0)
    if j == 0:
        return [t1, t0, 0.0, 0.0]
    prev = series.terms[j - 1]
    t2 = gamma * laplace_numeric(prev, gamma, 2)
    t3 = d1_coeff * laplace_numeric(prev, gamma, 1)
    return [t1, t0, t2, t3]


def recursion_residual(
    j: int,
    gamma: float,
    series: ExpansionSeries,
    d1_coeff: float = DERIVED_FIRST_DERIVATIVE_COEFF,
    relative: bool = False,
) -> float:
    """4 gamma u_j' + (6 - gamma^3) u_j + gamma u_{j-1}'' + d1_coeff u_{j-1}'.

    All transforms are computed by quadrature; derivatives come from
    y-weighted transforms.  ``relative`` divides by the largest term.
    """
    terms = recursion_terms(j, gamma, series, d1_coeff)
    res = sum(terms)
    if relative:
        return res / max(abs(t) for t in terms)
    return res
