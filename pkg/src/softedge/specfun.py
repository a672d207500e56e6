"""Special functions and adaptive quadrature.

Airy functions come from ``scipy.special.airy`` (Cephes), which is accurate to
better than 1e-13 on the range used here.  The weighted Hermite functions
are evaluated by their own orthonormal three-term recurrence so that no
factorials or raw Hermite polynomials are ever formed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

__all__ = [
    "AiryValues",
    "HermiteValues",
    "QuadratureSpec",
    "QuadratureError",
    "AiryOverflowError",
    "BI_OVERFLOW_THRESHOLD",
    "airy_eval",
    "airy_arrays",
    "hermite_psi_eval",
    "hermite_psi_pair",
    "adaptive_integrate",
    "airy_ai_tail_integral",
]

# Bi(y) ~ exp(2/3 y^{3/2}) / (sqrt(pi) y^{1/4}) passes the double range near y = 104.8.
BI_OVERFLOW_THRESHOLD = 100.0


class AiryOverflowError(OverflowError):
    """Raised when Bi or Bi' would overflow double precision."""


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature cannot meet the requested tolerance."""


@dataclass(frozen=True)
class AiryValues:
    y: float
    ai: float
    ai_prime: float
    bi: float
    bi_prime: float

    @property
    def wronskian(self) -> float:
        return self.ai * self.bi_prime - self.ai_prime * self.bi


@dataclass(frozen=True)
class HermiteValues:
    n: int
    x: float
    psi: float
    psi_prime: float


def airy_arrays(y):
    """Vectorised (Ai, Ai', Bi, Bi') for real ``y``."""
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise ValueError("airy argument must be finite")
    if np.any(y > BI_OVERFLOW_THRESHOLD):
        raise AiryOverflowError(f"Bi overflows for y > {BI_OVERFLOW_THRESHOLD}")
    return special.airy(y)


def ai_arrays(y):
    """Vectorised (Ai, Ai') only; no overflow restriction on large y."""
    y = np.asarray(y, dtype=float)
    ai, aip, _, _ = special.airy(np.minimum(y, BI_OVERFLOW_THRESHOLD))
    big = y > BI_OVERFLOW_THRESHOLD
    if np.any(big):
        ai = np.where(big, 0.0, ai)
        aip = np.where(big, 0.0, aip)
    return ai, aip


def airy_eval(y: float) -> AiryValues:
    """Ai, Ai', Bi, Bi' at a real point."""
    ai, aip, bi, bip = airy_arrays(float(y))
    return AiryValues(float(y), float(ai), float(aip), float(bi), float(bip))


# ---------------------------------------------------------------------------
# Weighted Hermite functions
# ---------------------------------------------------------------------------

_PI_M14 = math.pi ** -0.25
_RESCALE = 1e150


def hermite_psi_pair(n: int, x):
    """Return ``(psi_{n-1}(x), psi_n(x))`` as float arrays.

    psi_k(x) = exp(-x^2/2) H_k(x) / sqrt(sqrt(pi) 2^k k!).  The recurrence runs
    on psi directly with a separately tracked exponent, so neither the
    Gaussian factor nor the polynomial growth can under/overflow midway.
    ``psi_{-1}`` is 0.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_M14)
    log_scale = -0.5 * x * x
    for k in range(n):
        nxt = x * math.sqrt(2.0 / (k + 1)) * cur - math.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            f = np.where(big, 1.0 / _RESCALE, 1.0)
            prev = prev * f
            cur = cur * f
            log_scale = log_scale + np.where(big, math.log(_RESCALE), 0.0)
    scale = np.exp(log_scale)
    return prev * scale, cur * scale


def hermite_psi_eval(n: int, x: float) -> HermiteValues:
    if not 0 <= n <= 100_000:
        raise ValueError("n must lie in [0, 1e5]")
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    prev, cur = hermite_psi_pair(n, x)
    psi = float(cur)
    deriv = -x * psi + math.sqrt(2.0 * n) * float(prev)
    return HermiteValues(n, float(x), psi, deriv)


def hermite_psi_table(n_max: int, x):
    """All of psi_0..psi_{n_max} at ``x``; shape (n_max + 1, len(x)).  Small n only."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1, x.size))
    out[0] = _PI_M14 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, n_max):
        out[k + 1] = x * math.sqrt(2.0 / (k + 1)) * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod quadrature
# ---------------------------------------------------------------------------

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] and matching weights; Gauss weights sit on every other node.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[1:7:2] = _WG[:3]
_GW[7] = _WG[3]
_GW[9:15:2] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for :func:`adaptive_integrate`.

    Infinite endpoints are truncated by marching outward from the finite
    part of the range in doubling steps until the sampled ``|f|`` over a whole
    step drops below ``abs_tol / 100``; the tail beyond that point is
    assumed to keep decaying.
    """

    order: int = 15
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_intervals: int = 50_000
    initial_panels: int = 8
    tail_start_step: float = 1.0
    tail_probe_points: int = 64

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.order != 15:
            raise ValueError("only the 7/15-point Gauss-Kronrod pair is implemented")


def _gk_panels(f, left, right):
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    kron = half * (vals @ _KW)
    gauss = half * (vals @ _GW)
    resabs = np.abs(half) * (np.abs(vals) @ _KW)
    err = np.abs(kron - gauss)
    # roundoff floor, as in QUADPACK
    err = np.maximum(err, 50 * np.finfo(float).eps * resabs)
    return kron, err


def _truncate(f, anchor, direction, spec, target):
    step = spec.tail_start_step
    pos = anchor
    for _ in range(200):
        nxt = pos + direction * step
        probe = np.linspace(pos, nxt, spec.tail_probe_points)
        if np.max(np.abs(f(probe))) * step < target:
            return pos
        pos = nxt
        step *= 2.0
    raise QuadratureError("integrand does not decay; cannot truncate infinite range")


def adaptive_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    points=None,
) -> float:
    """Integrate a vectorised ``f`` over ``(a, b)``; endpoints may be infinite.

    ``points`` are optional interior breakpoints used as initial panel edges.
    Raises :class:`QuadratureError` if the error estimate cannot be pushed
    below ``max(abs_tol, rel_tol * |I|)`` within ``spec.max_intervals`` panels.
    """
    spec = spec or QuadratureSpec()
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_integrate(f, b, a, spec, points)
    target = spec.abs_tol / 100.0
    lo, hi = a, b
    if math.isinf(lo) or math.isinf(hi):
        inner = [p for p in ([] if points is None else points) if math.isfinite(p)]
        inner += [v for v in (a, b) if math.isfinite(v)]
        anchor_lo = min(inner) if inner else 0.0
        anchor_hi = max(inner) if inner else 0.0
        if math.isinf(lo):
            lo = _truncate(f, anchor_lo, -1.0, spec, target)
        if math.isinf(hi):
            hi = _truncate(f, anchor_hi, 1.0, spec, target)
        if lo >= hi:
            lo, hi = lo - spec.tail_start_step, hi + spec.tail_start_step
    edges = np.linspace(lo, hi, spec.initial_panels + 1)
    if points is not None:
        extra = [p for p in points if lo < p < hi]
        edges = np.unique(np.concatenate([edges, extra]))
    left, right = edges[:-1], edges[1:]
    vals, errs = _gk_panels(f, left, right)
    while True:
        total = float(np.sum(vals))
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        total_err = float(np.sum(errs))
        if total_err <= tol:
            return total
        if left.size >= spec.max_intervals:
            raise QuadratureError(
                f"subdivision limit reached: estimate {total:.16g}, error {total_err:.3g} > {tol:.3g}"
            )
        split = errs > tol / left.size
        if not np.any(split):
            split = errs >= np.max(errs)
        mid = 0.5 * (left[split] + right[split])
        new_left = np.concatenate([left[split], mid])
        new_right = np.concatenate([mid, right[split]])
        widths_ok = new_right - new_left > 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(new_left))
        if not np.all(widths_ok):
            raise QuadratureError("panel width underflow; integrand may be singular")
        nv, ne = _gk_panels(f, new_left, new_right)
        keep = ~split
        left = np.concatenate([left[keep], new_left])
        right = np.concatenate([right[keep], new_right])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])


def airy_ai_tail_integral(y):
    """int_y^inf Ai(t) dt for real ``y`` (vectorised over points, quadrature per point)."""
    y = np.asarray(y, dtype=float)
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-13)

    def ai(t):
        return special.airy(t)[0]

    out = np.empty(y.shape)
    for idx, v in np.ndenumerate(y):
        if v >= 0:
            out[idx] = adaptive_integrate(ai, v, math.inf, spec)
        else:
            out[idx] = 1.0 / 3.0 + adaptive_integrate(ai, v, 0.0, spec)
    return float(out) if out.ndim == 0 else out
