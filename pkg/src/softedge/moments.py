"""Spectral moments of the global-scaled density.

Moments are taken in the variable X = x_H / sqrt(N) (x_H in the Hermite
convention), for which the limiting second moment is 1/2 and
2^k m_{2k} -> Catalan(k).  This is sqrt(2) times the coordinate of the global
scaling map, so m_{2k} = 2^k * int X^{2k} rho_global(X) dX.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ensembles import global_density
from .specfun import QuadratureSpec, adaptive_integrate

__all__ = [
    "MomentSource",
    "MomentValue",
    "moment_closed_form",
    "moment_quadrature",
    "duality_check",
    "fit_inverse_powers",
]


class MomentSource(str, enum.Enum):
    CLOSED_FORM = "closedForm"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monteCarlo"


@dataclass(frozen=True)
class MomentValue:
    k: int
    beta: float | Fraction
    n: int
    value: float | Fraction
    source: MomentSource
    stderr: float | None = None


def _m2(b: Fraction, n) -> Fraction:
    return (1 + (-1 + 2 / b) / n) / 2


def _m4(b: Fraction, n) -> Fraction:
    return (2 + 5 * (-1 + 2 / b) / n + (3 - 10 / b + 12 / b**2) / n**2) / 4


def moment_closed_form(k: int, beta, n) -> Fraction:
    """m_2 or m_4 as an exact rational (``beta`` is converted with Fraction).

    ``n`` may be any nonzero rational so that formal substitutions such as
    N -> -beta N / 2 are possible.
    """
    b = Fraction(beta)
    if b <= 0:
        raise ValueError("beta must be positive")
    n = Fraction(n)
    if n == 0:
        raise ValueError("n must be nonzero")
    if k == 1:
        return _m2(b, n)
    if k == 2:
        return _m4(b, n)
    raise ValueError(f"closed form only known for k in (1, 2), got {k}")


def moment_quadrature(k: int, n: int, abs_tol: float = 1e-12) -> float:
    """m_{2k} of the beta = 2 density by adaptive quadrature."""
    if not 1 <= k <= 8:
        raise ValueError("k must lie in 1..8")
    if not 1 <= n <= 200:
        raise ValueError("n must lie in 1..200")

    def f(X):
        return (2.0 * X * X) ** k * global_density(n, X)

    # density is even; integrate over X >= 0 and double
    spec = QuadratureSpec(abs_tol=abs_tol / 2, rel_tol=1e-13, initial_panels=max(8, n))
    return 2.0 * adaptive_integrate(f, 0.0, math.inf, spec, points=[1.0])


def duality_check(k: int, beta, n) -> bool:
    """m_{2k}(beta; N) == m_{2k}(4/beta; -beta N / 2), exactly."""
    b = Fraction(beta)
    n = Fraction(n)
    return moment_closed_form(k, b, n) == moment_closed_form(k, 4 / b, -b * n / 2)


def fit_inverse_powers(ns, values, max_power: int) -> np.ndarray:
    """Least-squares coefficients a_0..a_J of sum_j a_j N^{-j} through (N, value)."""
    ns = np.asarray(ns, dtype=float)
    design = np.vander(1.0 / ns, max_power + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(design, np.asarray(values, dtype=float), rcond=None)
    return coef
