import math

import mpmath as mp
import numpy as np
import pytest
from numpy.polynomial import hermite as H

from softedge.ensembles import (
    Convention,
    DensityCurve,
    EnsembleSpec,
    ScalingKind,
    ckd_kernel,
    global_density,
    global_ode_residual,
    gue_density_raw,
    scaling_map,
    semicircle,
    soft_edge_density,
    soft_edge_limit_density,
)
from softedge.expansion import R0, eval_combo
from softedge.specfun import adaptive_integrate


def _direct_density(n, x):
    total = np.zeros_like(x)
    for k in range(n):
        c = np.zeros(k + 1)
        c[k] = 1.0
        psi = np.exp(-x * x / 2) * H.hermval(x, c) / math.sqrt(math.sqrt(math.pi) * 2**k * math.factorial(k))
        total += psi * psi
    return total


@pytest.mark.parametrize("n", [1, 2, 6, 12])
def test_density_equals_direct_sum(n):
    x = np.linspace(-6, 6, 61)
    assert np.allclose(gue_density_raw(n, x), _direct_density(n, x), rtol=1e-11, atol=1e-15)


def test_density_small_cases():
    x = 0.8
    assert gue_density_raw(1, x) == pytest.approx(math.exp(-x * x) / math.sqrt(math.pi), rel=1e-14)
    # N = 2: (1 + 2 x^2) e^{-x^2} / sqrt(pi)
    assert gue_density_raw(2, x) == pytest.approx((1 + 2 * x * x) * math.exp(-x * x) / math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_density_derivatives_finite_difference(k):
    n, x, h = 9, np.linspace(-4, 4, 17), 1e-3
    lower = lambda t: gue_density_raw(n, t, k - 1)
    fd = lambda h: (lower(x + h) - lower(x - h)) / (2 * h)
    rich = (4 * fd(h) - fd(2 * h)) / 3
    assert np.allclose(gue_density_raw(n, x, k), rich, rtol=1e-8, atol=1e-8)


def test_density_argument_checks():
    with pytest.raises(ValueError):
        gue_density_raw(0, 0.0)
    with pytest.raises(ValueError):
        gue_density_raw(3, 0.0, 4)


def test_kernel_symmetric_and_direct():
    n = 7
    for x, y in [(0.3, -1.1), (2.0, 2.0005), (-0.4, 1.9), (1.0, 1.0)]:
        k = ckd_kernel(n, x, y)
        assert k == pytest.approx(ckd_kernel(n, y, x), rel=1e-13)
        c = np.eye(n)
        norms = np.array([math.sqrt(math.sqrt(math.pi) * 2**j * math.factorial(j)) for j in range(n)])
        px = np.exp(-x * x / 2) * H.hermval(x, c.T) / norms
        py = np.exp(-y * y / 2) * H.hermval(y, c.T) / norms
        want = float(px @ py)
        assert k == pytest.approx(want, rel=1e-10, abs=1e-14)


def test_kernel_reproducing():
    n = 5
    z, w = np.polynomial.hermite.hermgauss(40)
    x, y = 0.6, -1.3
    vals = np.array([ckd_kernel(n, x, t) * ckd_kernel(n, t, y) for t in z]) * np.exp(z * z)
    assert vals @ w == pytest.approx(ckd_kernel(n, x, y), rel=1e-10)


def test_nprime():
    assert EnsembleSpec(1, 10).nprime == 9.5
    assert EnsembleSpec(2, 10).nprime == 10
    assert EnsembleSpec(4, 10).nprime == 10.25


def test_spec_validation():
    with pytest.raises(ValueError):
        EnsembleSpec(0, 3)
    with pytest.raises(ValueError):
        EnsembleSpec(2, 0)
    with pytest.raises(ValueError):
        EnsembleSpec(2, 2.5)


@pytest.mark.parametrize("kind", list(ScalingKind))
def test_scaling_round_trip(kind):
    m = scaling_map(EnsembleSpec(1, 40, Convention.BETA_CANONICAL), kind)
    x = np.linspace(-3, 3, 11)
    assert np.allclose(m.inverse(m.forward(x)), x, rtol=1e-14)


def test_beta_canonical_unit():
    h = scaling_map(EnsembleSpec(2, 30), ScalingKind.SOFT_EDGE)
    c = scaling_map(EnsembleSpec(2, 30, Convention.BETA_CANONICAL), ScalingKind.SOFT_EDGE)
    x = np.array([3.5, 3.9])
    assert np.allclose(c.forward(x), h.forward(math.sqrt(2) * x))
    assert c.jacobian == pytest.approx(h.jacobian / math.sqrt(2))


def test_soft_edge_map_uses_nprime():
    spec = EnsembleSpec(1, 50)
    with_np = scaling_map(spec, "softEdge")
    without = scaling_map(spec, "softEdge", use_nprime=False)
    assert with_np.nprime == 49.5 and without.nprime == 50.0
    assert with_np.shift == pytest.approx(math.sqrt(99.0))


def test_global_density_normalized_and_semicircle():
    assert adaptive_integrate(lambda X: global_density(30, X), -math.inf, math.inf, points=[-1, 1]) == pytest.approx(1.0, rel=1e-12)
    assert adaptive_integrate(semicircle, -1.0, 1.0) == pytest.approx(1.0, rel=1e-9)
    X = np.array([-0.5, 0.0, 0.4])
    assert np.allclose(global_density(400, X), semicircle(X), atol=3e-3)


def test_global_ode():
    X = np.linspace(-1.3, 1.3, 27)
    assert np.max(np.abs(global_ode_residual(12, X, relative=True))) < 1e-10


def test_soft_edge_density_approaches_limit():
    y = np.linspace(-3, 2, 21)
    err = [np.max(np.abs(soft_edge_density(n, y) - eval_combo(R0, y))) for n in (50, 400)]
    assert err[1] < err[0] < 0.05


def test_goe_edge_limit_against_mpmath():
    for y in (-2.0, 0.5):
        ym = mp.mpf(y)
        ai, aip = mp.airyai(ym), mp.airyai(ym, 1)
        want = aip**2 - ym * ai**2 + ai / 2 * (1 - mp.quad(mp.airyai, [ym, mp.inf]))
        assert soft_edge_limit_density(y, beta=1) == pytest.approx(float(want), rel=1e-12)
    with pytest.raises(ValueError):
        soft_edge_limit_density(0.0, beta=4)


def test_density_curve_validation():
    spec = EnsembleSpec(2, 3)
    m = scaling_map(spec, "raw")
    with pytest.raises(ValueError):
        DensityCurve([0, 1], [1.0], spec, m)
    with pytest.raises(ValueError):
        DensityCurve([1, 0], [1.0, 1.0], spec, m)
    with pytest.raises(ValueError):
        DensityCurve([0, 1], [1.0, -1.0], spec, m)


def test_smoothed_global_density_at_origin():
    # average over one local eigenvalue spacing pi/(2N) removes the oscillation
    gaps = []
    for n in (20, 40, 80):
        w = math.pi / (2 * n)
        avg = adaptive_integrate(lambda X: global_density(n, X), -w / 2, w / 2) / w
        gaps.append(abs(avg - 2 / math.pi))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[0] * 20 < 0.01
    assert semicircle(1.0) == 0.0


def test_soft_and_global_maps_consistent():
    n, y = 50, np.linspace(-4, 2, 25)
    lhs = soft_edge_density(n, y)
    rhs = n ** (1 / 3) / 2 * global_density(n, 1 + y / (2 * n ** (2 / 3)))
    assert np.allclose(lhs, rhs, rtol=1e-12)


def test_kernel_diagonal_example():
    assert ckd_kernel(3, 0.4, 0.4) == pytest.approx(gue_density_raw(3, 0.4), rel=1e-12)
    assert ckd_kernel(3, 0.4, 0.4 + 1e-9) == pytest.approx(gue_density_raw(3, 0.4), rel=1e-8)


def test_soft_edge_doubling_ratio():
    y = np.linspace(-4, 2, 1201)
    e = [np.max(np.abs(soft_edge_density(n, y) - eval_combo(R0, y))) for n in (64, 128)]
    assert 1.45 <= e[0] / e[1] <= 1.75


def test_global_ode_examples():
    assert abs(global_ode_residual(5, 0.3, relative=True)) < 1e-8
    assert abs(global_ode_residual(50, 0.95, relative=True)) < 1e-8
    assert abs(global_ode_residual(20, 0.0)) < 1e-12
