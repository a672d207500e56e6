"""Acceptance checks, runnable from the command line or from pytest.

Each check returns ``(passed, detail)``.  ``fast`` runs everything except
the Monte Carlo checks; ``full`` runs all of them.  Supplementary checks
(ids ending in ``b``) test the corrected forms where a reference formula
is known to be wrong; the literal checks are still run and
reported.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache
from typing import Callable

import numpy as np

from .algebra import AiryCombo
from .ensembles import EnsembleSpec, global_ode_residual, gue_density_raw, soft_edge_density, soft_edge_limit_density
from .expansion import R0, compute_series, eval_combo, fit_kernel_constant, homogeneous_check_numeric, l_op, solve_order, ExpansionSeries
from .laplace import REFERENCE_FIRST_DERIVATIVE_COEFF, laplace_numeric, recursion_residual, u0_closed
from .mc import edge_histogram, estimate_moment, histogram_l1_to, sample_dense, sample_tridiagonal
from .moments import duality_check, fit_inverse_powers, moment_closed_form, moment_quadrature
from .specfun import QuadratureSpec, adaptive_integrate, airy_eval, hermite_psi_eval

# Reference coefficients of the first two corrections.
REFERENCE_R1 = AiryCombo.from_lists(p=[0, 0, F(-3, 20)], q=[0, F(1, 10)], s=[F(3, 20)])
REFERENCE_R2 = AiryCombo.from_lists(
    p=[F(9, 1600), 0, 0, F(39, 2800)],
    q=[0, 0, F(-3, 2800)],
    s=[F(-99, 2800), 0, 0, 0, F(-1, 400)],
)
# Same, with the constant 99/2800 of s moved onto y (the only reading that
# respects the degree grading p ~ q + 1, s ~ q + 2 mod 3 of every term).
REFERENCE_R2_REGRADED = AiryCombo.from_lists(
    p=[F(9, 1600), 0, 0, F(39, 2800)],
    q=[0, 0, F(-3, 2800)],
    s=[0, F(-99, 2800), 0, 0, F(-1, 400)],
)

MC_SEED = 20251015


@dataclass
class CriterionResult:
    cid: str
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.cid:<4} {self.title} -- {self.detail} ({self.seconds:.1f} s)"


@dataclass
class Criterion:
    cid: str
    title: str
    check: Callable[[], tuple[bool, str]]
    monte_carlo: bool = False
    time_limit: float | None = None


def _series(order: int) -> ExpansionSeries:
    return compute_series(order)


def _diff(got: AiryCombo, want: AiryCombo) -> str:
    bad = [name for name in "pqs" if getattr(got, name) != getattr(want, name)]
    return ", ".join(f"{n}: got {getattr(got, n).to_str()} want {getattr(want, n).to_str()}" for n in bad)


# -- individual checks ----------------------------------------------------------

def check_r1() -> tuple[bool, str]:
    s = ExpansionSeries()
    r1 = solve_order(s, 1)
    if r1 == REFERENCE_R1:
        return True, f"r1 = {r1}"
    return False, "r1 mismatch: " + _diff(r1, REFERENCE_R1)


def check_r2_literal() -> tuple[bool, str]:
    s = _series(1)
    r2 = solve_order(s, 2)
    if r2 == REFERENCE_R2:
        return True, f"r2 = {r2}"
    return False, "r2 differs from the reference rationals: " + _diff(r2, REFERENCE_R2)


def check_r2_regraded() -> tuple[bool, str]:
    s = _series(1)
    r2 = solve_order(s, 2)
    ok = r2 == REFERENCE_R2_REGRADED and r2.degrees == (3, 2, 4)
    return ok, f"r2 = {r2}, degrees {r2.degrees}"


def check_homogeneous() -> tuple[bool, str]:
    exact = l_op(R0).is_zero()
    grids = {"AiAi": (-5, 3), "BiBi": (-5, 1), "AiBi": (-5, 2)}
    res = {k: homogeneous_check_numeric(k, np.linspace(a, b, 401)) for k, (a, b) in grids.items()}
    ok = exact and all(v < 1e-9 for v in res.values())
    return ok, f"L r0 == 0: {exact}; " + ", ".join(f"{k} {v:.1e}" for k, v in res.items())


def check_normalization() -> tuple[bool, str]:
    worst = 0.0
    spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13)
    for n in (1, 2, 5, 20, 100):
        total = adaptive_integrate(lambda x: gue_density_raw(n, x), -math.inf, math.inf, spec,
                                   points=np.linspace(-math.sqrt(2 * n), math.sqrt(2 * n), 2 * n + 1))
        worst = max(worst, abs(total - n) / n)
    return worst < 1e-10, f"max |int rho - N|/N = {worst:.2e}"


def check_global_ode() -> tuple[bool, str]:
    X = np.linspace(-1.2, 1.2, 50)
    worst = max(float(np.max(np.abs(global_ode_residual(n, X, relative=True)))) for n in (5, 20, 50))
    return worst < 1e-8, f"max relative residual {worst:.2e} (50 points, N = 5, 20, 50)"


def _sup_error(series, n, order, y):
    return float(np.max(np.abs(soft_edge_density(n, y) - series.evaluate(y, n, order=order))))


def check_convergence_rate() -> tuple[bool, str]:
    s = _series(2)
    y = np.linspace(-4, 2, 1201)
    e64, e128 = _sup_error(s, 64, 2, y), _sup_error(s, 128, 2, y)
    rate = math.log2(e64 / e128)
    return 1.7 <= rate <= 2.3, f"E2(64) = {e64:.3e}, E2(128) = {e128:.3e}, log2 ratio {rate:.3f}"


def check_kernel_constants() -> tuple[bool, str]:
    s = _series(2)
    y = np.linspace(-3, 1, 161)
    ns = [100, 200, 400]
    c1 = fit_kernel_constant(s, 1, soft_edge_density, ns, y)
    c2 = fit_kernel_constant(s, 2, soft_edge_density, ns, y)
    synth = _series(2)

    def probe(n, yy):
        return synth.evaluate(yy, n, with_constants=False) + 0.37 * n ** (-4.0 / 3.0) * eval_combo(R0, yy)

    c_syn = fit_kernel_constant(synth, 2, probe, ns, y)
    ok = abs(c1) < 1e-2 and abs(c2) < 1e-2 and abs(c_syn - 0.37) < 1e-6
    return ok, f"c1 = {c1:.2e}, c2 = {c2:.2e}, injected 0.37 -> {c_syn:.9f}"


def _u0_identity():
    worst = 0.0
    for g in (0.5, 1.0, 2.0):
        worst = max(worst, abs(laplace_numeric(R0, g, 0) / u0_closed(g) - 1.0))
    return worst


def check_laplace_reference() -> tuple[bool, str]:
    worst = _u0_identity()
    s = _series(1)
    res = [recursion_residual(1, g, s, d1_coeff=REFERENCE_FIRST_DERIVATIVE_COEFF, relative=True) for g in (1.0, 2.0)]
    ok = worst < 1e-6 and all(abs(r) < 1e-5 for r in res)
    return ok, (f"u0 max rel err {worst:.1e}; recursion with u'_(j-1) coefficient 1: "
                f"relative residual j=1 at gamma=1,2: {res[0]:.3f}, {res[1]:.3f}")


def check_laplace_derived() -> tuple[bool, str]:
    worst = _u0_identity()
    s = _series(1)
    res = [recursion_residual(1, g, s, relative=True) for g in (1.0, 2.0)]
    ok = worst < 1e-6 and all(abs(r) < 1e-5 for r in res)
    return ok, (f"u0 max rel err {worst:.1e}; recursion with u'_(j-1) coefficient 3: "
                f"relative residual j=1 at gamma=1,2: {res[0]:.1e}, {res[1]:.1e}")


def check_moments() -> tuple[bool, str]:
    m2 = moment_quadrature(1, 4)
    m4 = moment_quadrature(2, 2)
    dual = all(duality_check(k, b, n) for k, b in [(1, 1), (2, 1), (1, 4), (2, 4)] for n in (3, 10, 50))
    ns = [10, 20, 40, 80, 160]
    odd = 0.0
    for k in (1, 2):
        coef = fit_inverse_powers(ns, [moment_quadrature(k, n) for n in ns], 2 * k)
        odd = max(odd, float(np.max(np.abs(coef[1::2]))))
    ok = abs(m2 - 0.5) < 1e-10 and abs(m4 - 0.5625) < 1e-10 and dual and odd < 1e-6
    return ok, f"m2(4) - 1/2 = {m2 - 0.5:.1e}, m4(2) - 9/16 = {m4 - 0.5625:.1e}, duality {dual}, max odd coeff {odd:.1e}"


def check_mc_calibration() -> tuple[bool, str]:
    parts, ok = [], True
    tri = {}
    for b in (1, 2, 4):
        batch = sample_tridiagonal(EnsembleSpec(b, 100), 2000, MC_SEED + b)
        tri[b] = batch
        v, se = estimate_moment(batch, 1)
        z = (v - float(moment_closed_form(1, b, 100))) / se
        ok &= abs(z) < 4
        parts.append(f"beta={b} z={z:+.2f}")
    for b in (1, 2):
        dense = sample_dense(b, 100, 2000, MC_SEED + 10 + b)
        for k in (1, 2):
            v1, s1 = estimate_moment(tri[b], k)
            v2, s2 = estimate_moment(dense, k)
            z = (v1 - v2) / math.hypot(s1, s2)
            ok &= abs(z) < 4
            parts.append(f"tri-vs-dense beta={b} m{2 * k} z={z:+.2f}")
    return ok, "; ".join(parts)


@lru_cache(maxsize=1)
def _nprime_runs(seeds: int = 10, reps: int = 100_000):
    out = []
    for i in range(seeds):
        batch = sample_tridiagonal(EnsembleSpec(1, 50), reps, MC_SEED + 100 + i)
        out.append((edge_histogram(batch, True), edge_histogram(batch, False)))
    return out


def _nprime_wins(target) -> tuple[int, list[tuple[float, float]]]:
    d = [(histogram_l1_to(a, target), histogram_l1_to(b, target)) for a, b in _nprime_runs()]
    return sum(a < b for a, b in d), d


def check_nprime_vs_r0() -> tuple[bool, str]:
    wins, d = _nprime_wins(lambda y: eval_combo(R0, y))
    mean = np.mean(d, axis=0)
    return wins >= 8, f"N' closer to r0 in {wins}/10 seeds (mean L1 withN' {mean[0]:.3f}, withN {mean[1]:.3f})"


def check_nprime_vs_goe_limit() -> tuple[bool, str]:
    wins, d = _nprime_wins(lambda y: soft_edge_limit_density(y, beta=1))
    mean = np.mean(d, axis=0)
    return wins >= 8, f"N' closer to beta=1 limit in {wins}/10 seeds (mean L1 withN' {mean[0]:.3f}, withN {mean[1]:.3f})"


def check_special_functions() -> tuple[bool, str]:
    import mpmath as mp

    worst_airy = 0.0
    with mp.workdps(50):
        for y in np.linspace(-10, 5, 25):
            got = airy_eval(float(y))
            ym = mp.mpf(float(y))
            want = [mp.airyai(ym), mp.airyai(ym, 1), mp.airybi(ym), mp.airybi(ym, 1)]
            for g, w in zip((got.ai, got.ai_prime, got.bi, got.bi_prime), want):
                err = abs(mp.mpf(g) - w)
                if abs(w) > 1:
                    err /= abs(w)
                worst_airy = max(worst_airy, float(err))
        worst_psi = 0.0
        for n in (0, 1, 25):
            for x in (-0.7, 1.3, 2.9):
                xm = mp.mpf(x)
                want = mp.exp(-xm**2 / 2) * mp.hermite(n, xm) / mp.sqrt(mp.sqrt(mp.pi) * 2**n * mp.factorial(n))
                got = hermite_psi_eval(n, x).psi
                worst_psi = max(worst_psi, float(abs((mp.mpf(got) - want) / want)))
    ok = worst_airy < 1e-12 and worst_psi < 1e-12
    return ok, f"Airy max err {worst_airy:.1e}; psi max rel err {worst_psi:.1e}"


CRITERIA: list[Criterion] = [
    Criterion("C1", "first correction r1 exact", check_r1, time_limit=1.0),
    Criterion("C2", "second correction r2 equals reference rationals", check_r2_literal, time_limit=5.0),
    Criterion("C2b", "second correction r2 equals regraded rationals", check_r2_regraded, time_limit=5.0),
    Criterion("C3", "homogeneous solutions", check_homogeneous),
    Criterion("C4", "density normalization", check_normalization, time_limit=30.0),
    Criterion("C5", "global third-order ODE residual", check_global_ode),
    Criterion("C6", "convergence order of truncated expansion", check_convergence_rate, time_limit=120.0),
    Criterion("C7", "fitted kernel constants", check_kernel_constants),
    Criterion("C8", "Laplace identities, reference recursion", check_laplace_reference),
    Criterion("C8b", "Laplace identities, recursion by parts", check_laplace_derived),
    Criterion("C9", "spectral moments", check_moments),
    Criterion("C10", "Monte Carlo calibration", check_mc_calibration, monte_carlo=True, time_limit=300.0),
    Criterion("C11", "N' shift evidence against r0", check_nprime_vs_r0, monte_carlo=True, time_limit=900.0),
    Criterion("C11b", "N' shift evidence against beta=1 limit", check_nprime_vs_goe_limit, monte_carlo=True, time_limit=900.0),
    Criterion("C12", "special function accuracy", check_special_functions),
]


def run_criterion(c: Criterion) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, detail = c.check()
    except Exception as exc:  # reported as a failure, not raised
        passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if passed and c.time_limit is not None and dt > c.time_limit:
        passed, detail = False, detail + f"; exceeded time limit {c.time_limit:.0f} s"
    return CriterionResult(c.cid, c.title, bool(passed), detail, dt)


def verify_suite(selection: str = "fast", only=None, echo: Callable[[str], None] | None = None) -> tuple[list[CriterionResult], int]:
    """Run the checks; returns the results and an exit status (0 iff all pass)."""
    if selection not in ("fast", "full"):
        raise ValueError("selection must be 'fast' or 'full'")
    results = []
    for c in CRITERIA:
        if selection == "fast" and c.monte_carlo:
            continue
        if only is not None and c.cid not in only:
            continue
        r = run_criterion(c)
        if echo is not None:
            echo(r.line())
        results.append(r)
    return results, 0 if all(r.passed for r in results) else 1
