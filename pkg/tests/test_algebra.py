from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from softedge.algebra import (
    AiryCombo,
    RationalPoly,
    SingularSystemError,
    echelon_fraction_free,
    nullspace_exact,
    solve_exact,
)

small = st.integers(-6, 6)
polys = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), max_size=5).map(RationalPoly)


def test_poly_basics():
    p = RationalPoly([1, 0, F(3, 2)])
    assert p.degree == 2
    assert RationalPoly().degree == -1
    assert p.deriv() == RationalPoly([0, 3])
    assert p.shift(2) == RationalPoly([0, 0, 1, 0, F(3, 2)])
    assert p(2.0) == pytest.approx(7.0)
    assert RationalPoly([1, 2, 0, 0]) == RationalPoly([1, 2])


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_poly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b).deriv() == a.deriv() * b + a * b.deriv()
    assert a - a == RationalPoly()


def test_combo_degrees_and_arith():
    c = AiryCombo.from_lists(p=[0, -1], q=[1], s=[])
    assert c.degrees == (1, 0, -1)
    assert (c + c) == c * 2
    assert (c - c).is_zero()


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=3, max_size=6))
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(rows):
    _, pivots = echelon_fraction_free(rows)
    assert len(pivots) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
@settings(max_examples=80, deadline=None)
def test_solve_matches_sympy(a, x_true):
    m = sympy.Matrix(a)
    b = [sum(F(r) * v for r, v in zip(row, x_true)) for row in a]
    x, free = solve_exact(a, b)
    assert [sum(F(r) * v for r, v in zip(row, x)) for row in a] == b
    assert len(free) == 4 - m.rank()
    null = nullspace_exact(a)
    assert len(null) == len(m.nullspace())
    for v in null:
        assert all(sum(F(r) * c for r, c in zip(row, v)) == 0 for row in a)


def test_inconsistent_system():
    with pytest.raises(SingularSystemError):
        solve_exact([[1, 1], [2, 2]], [1, 3])
