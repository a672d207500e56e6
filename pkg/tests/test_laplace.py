import math

import pytest

from softedge.expansion import R0
from softedge.laplace import (
    REFERENCE_FIRST_DERIVATIVE_COEFF,
    LaplaceValue,
    laplace_numeric,
    recursion_residual,
    u0_closed,
    u0_closed_derivative,
)


@pytest.mark.parametrize("g", [0.3, 1.0, 2.5])
def test_u0_closed_form(g):
    assert laplace_numeric(R0, g) == pytest.approx(u0_closed(g), rel=1e-9)


def test_u0_derivative_richardson():
    g = 1.3

    def fd(h):
        return (u0_closed(g + h) - u0_closed(g - h)) / (2 * h)

    rich = (4 * fd(1e-3) - fd(2e-3)) / 3
    assert u0_closed_derivative(g) == pytest.approx(rich, rel=1e-10)


def test_moment_weight_is_gamma_derivative(series3):
    g, h = 1.5, 1e-3
    for term in series3.terms[:3]:
        d1 = laplace_numeric(term, g, 1)
        fd = (laplace_numeric(term, g + h, 0) - laplace_numeric(term, g - h, 0)) / (2 * h)
        assert d1 == pytest.approx(fd, rel=1e-5, abs=1e-9)
        d2 = laplace_numeric(term, g, 2)
        fd2 = (laplace_numeric(term, g + h, 1) - laplace_numeric(term, g - h, 1)) / (2 * h)
        assert d2 == pytest.approx(fd2, rel=1e-5, abs=1e-9)


def test_u0_positive():
    assert all(laplace_numeric(R0, g) > 0 for g in (0.2, 1.0, 3.0))


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_recursion_holds(series3, j):
    for g in (0.7, 1.6):
        assert abs(recursion_residual(j, g, series3, relative=True)) < 1e-8


def test_reference_coefficient_fails(series3):
    assert abs(recursion_residual(1, 1.0, series3, d1_coeff=REFERENCE_FIRST_DERIVATIVE_COEFF, relative=True)) > 0.05


def test_gamma_must_be_positive():
    with pytest.raises(ValueError):
        u0_closed(0.0)
    with pytest.raises(ValueError):
        laplace_numeric(R0, -1.0)
    with pytest.raises(ValueError):
        LaplaceValue(-1.0, 0.0, 0, "quadrature")
    with pytest.raises(ValueError):
        laplace_numeric(R0, 1.0, 3)


def test_u0_values():
    assert u0_closed(1.0) == pytest.approx(math.exp(1 / 12) / (2 * math.sqrt(math.pi)), rel=1e-15)
    assert u0_closed(1.0) == pytest.approx(0.3066100, abs=1e-7)


@pytest.mark.parametrize("g", [0.5, 1.0, 2.0])
def test_u0_solves_homogeneous_recursion(g):
    t1, t0 = 4 * g * u0_closed_derivative(g), (6 - g**3) * u0_closed(g)
    assert abs(t1 + t0) / max(abs(t1), abs(t0)) < 1e-12


def test_zero_combo():
    from softedge.algebra import AiryCombo

    assert laplace_numeric(AiryCombo.zero(), 1.0) == 0.0


def test_richardson_ratio(series3):
    c, g = series3.terms[1], 1.2
    exact = laplace_numeric(c, g, 1, abs_tol=1e-13)

    def err(h):
        fd = (laplace_numeric(c, g + h, 0, abs_tol=1e-13) - laplace_numeric(c, g - h, 0, abs_tol=1e-13)) / (2 * h)
        return abs(fd - exact)

    assert err(1e-3) / err(1e-4) == pytest.approx(100, rel=0.05)
