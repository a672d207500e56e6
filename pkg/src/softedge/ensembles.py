"""Finite-N GUE density, its correlation kernel, and the coordinate maps.

Internally everything is computed in the Hermite-weight convention (weight
e^{-x^2}).  The beta-canonical convention of the sampler, with joint density
proportional to prod e^{-beta x^2} |Delta|^beta, is reached by x_H = sqrt(2) x_c.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import ai_arrays, airy_ai_tail_integral, hermite_psi_pair, hermite_psi_table

__all__ = [
    "Convention",
    "ScalingKind",
    "EnsembleSpec",
    "ScalingMap",
    "DensityCurve",
    "gue_density_raw",
    "ckd_kernel",
    "scaling_map",
    "semicircle",
    "global_density",
    "soft_edge_density",
    "global_ode_residual",
    "soft_edge_limit_density",
]


class Convention(str, enum.Enum):
    HERMITE = "HermiteWeight"
    BETA_CANONICAL = "BetaCanonical"


class ScalingKind(str, enum.Enum):
    RAW = "raw"
    GLOBAL = "global"
    SOFT_EDGE = "softEdge"


@dataclass(frozen=True)
class EnsembleSpec:
    beta: float
    n: int
    convention: Convention = Convention.HERMITE

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        object.__setattr__(self, "convention", Convention(self.convention))

    @property
    def nprime(self) -> float:
        """Shifted size N' = N + (beta - 2) / (2 beta)."""
        return self.n + (self.beta - 2.0) / (2.0 * self.beta)


@dataclass(frozen=True)
class ScalingMap:
    """Affine map from raw eigenvalues to a scaled coordinate.

    ``forward(x) = (x * unit - shift) / width`` where ``unit`` converts to the
    Hermite convention (1 or sqrt 2).  Densities transform as
    ``rho_scaled(t) = jacobian * rho_raw(inverse(t))``; for the global map the
    jacobian also divides by N so that the curve integrates to 1.
    """

    kind: ScalingKind
    spec: EnsembleSpec
    nprime: float
    unit: float
    shift: float
    width: float
    jacobian: float

    def forward(self, x):
        return (np.asarray(x, dtype=float) * self.unit - self.shift) / self.width

    def inverse(self, t):
        return (np.asarray(t, dtype=float) * self.width + self.shift) / self.unit


def scaling_map(spec: EnsembleSpec, kind, use_nprime: bool = True) -> ScalingMap:
    """Build the raw, global or soft-edge map for ``spec``.

    global:   X = x_H / sqrt(2N), density factor sqrt(2N)/N
    softEdge: x_H = sqrt(2N') + y / (sqrt(2) N'^{1/6}), density factor 1/(sqrt(2) N'^{1/6})
    with x_H = sqrt(2) x in the beta-canonical convention.  ``use_nprime=False``
    uses N in place of N' in the soft-edge map.
    """
    kind = ScalingKind(kind)
    n = spec.n
    unit = math.sqrt(2.0) if spec.convention is Convention.BETA_CANONICAL else 1.0
    nprime = spec.nprime if kind is ScalingKind.SOFT_EDGE and use_nprime else float(n)
    if kind is ScalingKind.RAW:
        shift, width, jac = 0.0, 1.0, 1.0
    elif kind is ScalingKind.GLOBAL:
        shift, width = 0.0, math.sqrt(2.0 * n)
        jac = width / n
    else:
        shift = math.sqrt(2.0 * nprime)
        width = 1.0 / (math.sqrt(2.0) * nprime ** (1.0 / 6.0))
        jac = width
    # rho_raw lives in the caller's convention; x_H = unit * x_c
    return ScalingMap(kind, spec, nprime, unit, shift, width, jac / unit)


@dataclass
class DensityCurve:
    grid: np.ndarray
    values: np.ndarray
    spec: EnsembleSpec
    scaling: ScalingMap

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values differ in shape")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(self.values < 0):
            raise ValueError("density values must be nonnegative")


# ---------------------------------------------------------------------------
# Density and derivatives
# ---------------------------------------------------------------------------

# rho and its derivatives are kept as P a^2 + Q b^2 + R a b with a = psi_{N-1},
# b = psi_N and polynomial P, Q, R.  Using
#   a' = x a - c b,   b' = -x b + c a,   c = sqrt(2N),
# differentiation stays inside that form.

_Poly = np.polynomial.Polynomial


def _density_forms(n: int, order: int):
    c = math.sqrt(2.0 * n)
    x = _Poly([0.0, 1.0])
    form = (_Poly([float(n)]), _Poly([float(n)]), _Poly([0.0, -c]))
    forms = [form]
    for _ in range(order):
        p, q, r = form
        form = (p.deriv() + 2 * x * p + c * r, q.deriv() - 2 * x * q - c * r, r.deriv() - 2 * c * p + 2 * c * q)
        forms.append(form)
    return forms


def gue_density_raw(n: int, x, derivative_order: int = 0):
    """GUE eigenvalue density (weight e^{-x^2}) or its 1st-3rd derivative.

    Evaluated from the confluent Christoffel-Darboux form
    N (psi_{N-1}^2 + psi_N^2) - sqrt(2N) x psi_{N-1} psi_N.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if derivative_order not in (0, 1, 2, 3):
        raise ValueError("derivative_order must be 0..3")
    xa = np.asarray(x, dtype=float)
    a, b = hermite_psi_pair(n, xa)
    p, q, r = _density_forms(n, derivative_order)[derivative_order]
    out = p(xa) * a * a + q(xa) * b * b + r(xa) * a * b
    if derivative_order == 0:
        out = np.maximum(out, 0.0)
    return float(out) if out.ndim == 0 else out


def ckd_kernel(n: int, x, y):
    """GUE correlation kernel K_N(x, y) = sum_{j<N} psi_j(x) psi_j(y).

    Off the diagonal the Christoffel-Darboux quotient is used; when x and y
    are too close for the quotient to be accurate it falls back to the sum.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    x = float(x)
    y = float(y)
    if abs(x - y) < 1e-3 * (1.0 + abs(x) + abs(y)):
        if x == y:
            return float(gue_density_raw(n, x))
        lo, hi = (x, y) if x < y else (y, x)
        t = hermite_psi_table(n - 1, np.array([lo, hi]))
        return float(np.dot(t[:, 0], t[:, 1]))
    ax, bx = hermite_psi_pair(n, x)
    ay, by = hermite_psi_pair(n, y)
    return float(math.sqrt(n / 2.0) * (bx * ay - ax * by) / (x - y))


def semicircle(X):
    X = np.asarray(X, dtype=float)
    inside = np.abs(X) < 1
    out = np.where(inside, (2.0 / math.pi) * np.sqrt(np.where(inside, 1.0 - X * X, 0.0)), 0.0)
    return float(out) if out.ndim == 0 else out


def _scaled_density(spec: EnsembleSpec, kind, t):
    if spec.beta != 2:
        raise ValueError("the analytic density is available for beta = 2 only")
    smap = scaling_map(EnsembleSpec(2, spec.n, Convention.HERMITE), kind)
    return smap.jacobian * gue_density_raw(spec.n, smap.inverse(t))


def global_density(n: int, X):
    """Global-scaled GUE density sqrt(2N)/N rho(sqrt(2N) X); integrates to 1."""
    return _scaled_density(EnsembleSpec(2, n), ScalingKind.GLOBAL, X)


def soft_edge_density(n: int, y):
    """Soft-edge GUE density rho(sqrt(2N) + y/(sqrt 2 N^{1/6})) / (sqrt 2 N^{1/6})."""
    return _scaled_density(EnsembleSpec(2, n), ScalingKind.SOFT_EDGE, y)


def global_ode_terms(n: int, X):
    """The three terms of ((1/4N)^2 d^3 - (X^2-1) d + X) applied to the global density."""
    X = np.asarray(X, dtype=float)
    w = math.sqrt(2.0 * n)
    x = w * X
    derivs = [(w / n) * w**k * gue_density_raw(n, x, k) for k in (0, 1, 3)]
    return (
        derivs[2] / (4.0 * n) ** 2,
        -(X * X - 1.0) * derivs[1],
        X * derivs[0],
    )


def global_ode_residual(n: int, x, relative: bool = False):
    """Residual of the third-order ODE satisfied by the global-scaled density.

    With ``relative=True`` the residual is divided by the largest of the
    three term magnitudes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t3, t1, t0 = global_ode_terms(n, x)
    res = t3 + t1 + t0
    if relative:
        scale = np.maximum(np.maximum(np.abs(t3), np.abs(t1)), np.abs(t0))
        res = np.where(scale > 0, res / np.where(scale > 0, scale, 1.0), 0.0)
    return float(res) if np.ndim(res) == 0 else res


def soft_edge_limit_density(y, beta: int = 2):
    """Limiting soft-edge density for beta = 2 (GUE) or beta = 1 (GOE).

    beta = 2: Ai'(y)^2 - y Ai(y)^2.
    beta = 1: the same plus Ai(y) (1 - int_y^inf Ai) / 2.
    """
    y = np.asarray(y, dtype=float)
    ai, aip = ai_arrays(y)
    out = aip * aip - y * ai * ai
    if beta == 1:
        out = out + 0.5 * ai * (1.0 - airy_ai_tail_integral(y))
    elif beta != 2:
        raise ValueError("limit density implemented for beta in (1, 2)")
    return float(out) if out.ndim == 0 else out
