"""Soft-edge expansion of the GUE density in the polynomial Airy module.

The soft-edge scaled density satisfies

    (d^3/dy^3 - 4y d/dy + 2) rho = N^{-2/3} (y^2 d/dy - y) rho,

so writing rho = r_0 + N^{-2/3} r_1 + N^{-4/3} r_2 + ... gives the recursion
L r_j = R r_{j-1} with L, R the bracketed operators.  Each r_j is found as
an exact element p Ai^2 + q Ai'^2 + s Ai Ai' by matching coefficients.

L has a one-dimensional kernel in the module, spanned by r_0 = Ai'^2 - y Ai^2.
Terms are stored in the gauge q_j(0) = 0; any physical multiple of r_0 that
remains is tracked separately as a kernel constant c_j.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .algebra import AiryCombo, RationalPoly, SingularSystemError, nullspace_exact, solve_exact
from .specfun import airy_arrays, ai_arrays

log = logging.getLogger(__name__)

__all__ = [
    "R0",
    "KernelConstant",
    "ExpansionSeries",
    "ExpansionError",
    "d_op",
    "l_op",
    "rhs_op",
    "solve_order",
    "compute_series",
    "eval_combo",
    "fit_kernel_constant",
    "homogeneous_check_numeric",
]

R0 = AiryCombo.from_lists(p=[0, -1], q=[1], s=[])


class ExpansionError(RuntimeError):
    pass


def d_op(c: AiryCombo) -> AiryCombo:
    """Exact d/dy inside the module (uses Ai'' = y Ai)."""
    return AiryCombo(
        c.p.deriv() + c.s.shift(1),
        c.q.deriv() + c.s,
        c.s.deriv() + c.p * 2 + c.q.shift(1) * 2,
    )


def l_op(c: AiryCombo) -> AiryCombo:
    """d^3/dy^3 - 4y d/dy + 2."""
    d1 = d_op(c)
    d3 = d_op(d_op(d1))
    return d3 - d1.shift(1) * 4 + c * 2


def rhs_op(c: AiryCombo) -> AiryCombo:
    """y^2 d/dy - y."""
    return d_op(c).shift(2) - c.shift(1)


@dataclass
class KernelConstant:
    value: float | Fraction
    provenance: str  # "pinned", "gauge" or "fitted"


@dataclass
class ExpansionSeries:
    terms: list[AiryCombo] = field(default_factory=lambda: [R0])
    gauge: str = "q(0)=0"
    kernel_constants: list[KernelConstant] = field(
        default_factory=lambda: [KernelConstant(Fraction(0), "pinned")]
    )

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def append(self, term: AiryCombo):
        self.terms.append(term)
        self.kernel_constants.append(KernelConstant(Fraction(0), "gauge"))

    def evaluate(self, y, nprime: float, order: int | None = None, with_constants: bool = True):
        """Truncated expansion sum_{j<=order} nprime^{-2j/3} (r_j + c_j r_0)."""
        order = self.order if order is None else order
        y = np.asarray(y, dtype=float)
        ai, aip = ai_arrays(y)
        total = np.zeros_like(y)
        r0 = _combine(R0, y, ai, aip)
        for j in range(order + 1):
            w = nprime ** (-2.0 * j / 3.0)
            total = total + w * _combine(self.terms[j], y, ai, aip)
            if with_constants:
                total = total + w * float(self.kernel_constants[j].value) * r0
        return total


def _combine(c: AiryCombo, y, ai, aip):
    return c.p(y) * ai * ai + c.q(y) * aip * aip + c.s(y) * ai * aip


def eval_combo(c: AiryCombo, y):
    """p(y) Ai(y)^2 + q(y) Ai'(y)^2 + s(y) Ai(y) Ai'(y)."""
    y = np.asarray(y, dtype=float)
    ai, aip = ai_arrays(y)
    out = _combine(c, y, ai, aip)
    return float(out) if out.ndim == 0 else out


def _basis(d: int):
    cols = []
    for comp in range(3):
        for k in range(d + 1):
            polys = [RationalPoly(), RationalPoly(), RationalPoly()]
            polys[comp] = RationalPoly.monomial(k)
            cols.append(AiryCombo(*polys))
    return cols


def _flatten(c: AiryCombo, deg: int) -> list[Fraction]:
    return [poly[k] for poly in (c.p, c.q, c.s) for k in range(deg + 1)]


def _assemble(d: int, rhs: AiryCombo):
    basis = _basis(d)
    images = [l_op(b) for b in basis]
    out_deg = max([rhs.max_degree, d + 3] + [im.max_degree for im in images])
    cols = [_flatten(im, out_deg) for im in images]
    a = [list(row) for row in zip(*cols)]
    return a, _flatten(rhs, out_deg)


def _unflatten(x: Sequence[Fraction], d: int) -> AiryCombo:
    n = d + 1
    return AiryCombo(RationalPoly(x[:n]), RationalPoly(x[n:2 * n]), RationalPoly(x[2 * n:]))


def solve_order(prev: ExpansionSeries, j: int, degree_ceiling: int | None = None) -> AiryCombo:
    """Solve L r_j = R r_{j-1} exactly, in the gauge q_j(0) = 0."""
    if j < 1 or len(prev.terms) < j:
        raise ValueError("need r_0..r_{j-1} to solve for r_j")
    rhs = rhs_op(prev.terms[j - 1])
    ceiling = 4 * j + 8 if degree_ceiling is None else degree_ceiling
    d = max(rhs.max_degree, 0) + 3
    while d <= ceiling:
        a, b = _assemble(d, rhs)
        try:
            x, _ = solve_exact(a, b)
        except SingularSystemError:
            log.debug("order %d: degree bound %d inconsistent", j, d)
            d += 2
            continue
        null = nullspace_exact(a)
        if len(null) != 1:
            raise ExpansionError(f"order {j}: nullspace dimension {len(null)}, expected 1")
        kernel = _unflatten(null[0], d)
        if kernel.q[0] == 0:
            raise ExpansionError(f"order {j}: kernel vector has q(0) = 0, gauge undefined")
        kernel = kernel * (1 / kernel.q[0])
        if kernel != R0:
            raise ExpansionError(f"order {j}: kernel {kernel} is not r_0")
        part = _unflatten(x, d)
        term = part - R0 * part.q[0]
        if l_op(term) != rhs:
            raise ExpansionError(f"order {j}: exact residual check failed")
        return term
    raise ExpansionError(f"order {j}: no solution with degree <= {ceiling}")


def compute_series(order: int) -> ExpansionSeries:
    series = ExpansionSeries()
    for j in range(1, order + 1):
        series.append(solve_order(series, j))
    return series


def fit_kernel_constant(
    series: ExpansionSeries,
    j: int,
    density_probe: Callable[[int, np.ndarray], np.ndarray],
    n_list: Sequence[int],
    y_grid,
    beta: float = 2.0,
    max_condition: float = 1e8,
) -> float:
    """Least-squares estimate of the r_0 multiple c_j hidden in order j.

    Residuals rho_N - sum_{i<=j} N'^{-2i/3} r_i (gauged terms, no constants)
    are divided by N'^{-2j/3} and fitted to c_j r_0 uniformly over all
    (N, y) pairs.  The result is
    stored on ``series`` with provenance ``"fitted"``.
    """
    if len(n_list) < 3:
        raise ValueError("need at least three matrix sizes")
    if series.order < j:
        raise ValueError(f"series holds only {series.order} orders")
    y = np.asarray(y_grid, dtype=float)
    r0 = eval_combo(R0, y)
    rows, rhs = [], []
    for n in n_list:
        nprime = n + (beta - 2.0) / (2.0 * beta)
        # gauged terms only: earlier fitted constants carry their own truncation
        # error, which the N'^{2j/3} rescaling below would amplify
        approx = series.evaluate(y, nprime, order=j, with_constants=False)
        resid = (np.asarray(density_probe(n, y), dtype=float) - approx) * nprime ** (2.0 * j / 3.0)
        rows.append(r0)
        rhs.append(resid)
    design = np.concatenate(rows)[:, None]
    target = np.concatenate(rhs)
    cond = np.linalg.cond(design)
    if not np.isfinite(cond) or cond > max_condition:
        raise ExpansionError(f"ill-conditioned kernel-constant fit (cond = {cond:.3g})")
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    c = float(coef[0])
    series.kernel_constants[j] = KernelConstant(c, "fitted")
    return c


# ---------------------------------------------------------------------------
# Homogeneous solutions with two Airy factors
# ---------------------------------------------------------------------------

# 4-basis coefficient arrays (fg, f'g', fg', f'g), each a numpy Polynomial
_P = np.polynomial.Polynomial


def _d4(c):
    fg, fpgp, fgp, fpg = c
    y = _P([0, 1])
    return (
        fg.deriv() + y * fgp + y * fpg,
        fpgp.deriv() + fgp + fpg,
        fgp.deriv() + fg + y * fpgp,
        fpg.deriv() + fg + y * fpgp,
    )


def _eval4(c, y, f, fp, g, gp):
    return c[0](y) * f * g + c[1](y) * fp * gp + c[2](y) * f * gp + c[3](y) * fp * g


def homogeneous_check_numeric(which: str, y_grid) -> float:
    """Max relative residual of (d^3 - 4y d + 2) on a two-Airy homogeneous solution.

    ``which`` is one of ``"AiAi"``, ``"BiBi"``, ``"AiBi"`` selecting
    f'g' - y f g for (f, g) = (Ai, Ai), (Bi, Bi) or (Ai, Bi).  The three
    derivatives are evaluated separately and combined numerically; each
    point's residual is divided by the sum of the magnitudes of the three
    terms.
    """
    y = np.asarray(y_grid, dtype=float)
    ai, aip, bi, bip = airy_arrays(y)
    pick = {"AiAi": (ai, aip, ai, aip), "BiBi": (bi, bip, bi, bip), "AiBi": (ai, aip, bi, bip)}
    if which not in pick:
        raise ValueError(f"unknown homogeneous solution {which!r}")
    vals = pick[which]
    c0 = (_P([0, -1]), _P([1]), _P([0]), _P([0]))
    c1 = _d4(c0)
    c3 = _d4(_d4(c1))
    f0 = _eval4(c0, y, *vals)
    f1 = _eval4(c1, y, *vals)
    f3 = _eval4(c3, y, *vals)
    resid = f3 - 4 * y * f1 + 2 * f0
    scale = np.abs(f3) + np.abs(4 * y * f1) + np.abs(2 * f0)
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(np.abs(resid) / scale))
