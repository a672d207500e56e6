"""Exact rational polynomials, the polynomial Airy module and exact linear solves.

An :class:`AiryCombo` ``(p, q, s)`` stands for ``p Ai^2 + q Ai'^2 + s Ai Ai'``.
Because Ai'' = y Ai, this set is closed under d/dy, so the differential
operators acting on soft-edge densities can be applied without ever
leaving exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "RationalPoly",
    "AiryCombo",
    "SingularSystemError",
    "echelon_fraction_free",
    "solve_exact",
    "nullspace_exact",
]


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class RationalPoly:
    """Polynomial in y with exact rational coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPoly):
            other = RationalPoly([other]) if isinstance(other, (int, Fraction)) else other
            if not isinstance(other, RationalPoly):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            s = _frac(other)
            return RationalPoly(s * c for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "RationalPoly":
        """Multiply by y**k."""
        if self.is_zero():
            return self
        return RationalPoly([0] * k + list(self.coeffs))

    def deriv(self) -> "RationalPoly":
        return RationalPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, y):
        """Horner evaluation in floating point (works on numpy arrays)."""
        acc = 0.0 * y
        for c in reversed(self.coeffs):
            acc = acc * y + float(c)
        return acc

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def to_str(self, var: str = "y") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}" if mag.denominator == 1 else f"({mag})*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class AiryCombo:
    p: RationalPoly
    q: RationalPoly
    s: RationalPoly

    @classmethod
    def from_lists(cls, p=(), q=(), s=()) -> "AiryCombo":
        return cls(RationalPoly(p), RationalPoly(q), RationalPoly(s))

    @classmethod
    def zero(cls) -> "AiryCombo":
        return cls(RationalPoly(), RationalPoly(), RationalPoly())

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero() and self.s.is_zero()

    def __add__(self, o: "AiryCombo") -> "AiryCombo":
        return AiryCombo(self.p + o.p, self.q + o.q, self.s + o.s)

    def __sub__(self, o: "AiryCombo") -> "AiryCombo":
        return AiryCombo(self.p - o.p, self.q - o.q, self.s - o.s)

    def __neg__(self) -> "AiryCombo":
        return AiryCombo(-self.p, -self.q, -self.s)

    def __mul__(self, c) -> "AiryCombo":
        """Scale by a rational or multiply componentwise by a RationalPoly."""
        return AiryCombo(self.p * c, self.q * c, self.s * c)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "AiryCombo":
        return AiryCombo(self.p.shift(k), self.q.shift(k), self.s.shift(k))

    @property
    def degrees(self) -> tuple[int, int, int]:
        return (self.p.degree, self.q.degree, self.s.degree)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def __repr__(self):
        return f"AiryCombo(p={self.p.to_str()}, q={self.q.to_str()}, s={self.s.to_str()})"


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


class SingularSystemError(ValueError):
    """The linear system has no solution."""


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            den = lcm(den, _frac(v).denominator)
        ints = [int(_frac(v) * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def echelon_fraction_free(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Bareiss fraction-free row echelon form of a rational matrix.

    Rows are first cleared to primitive integer vectors; every subsequent
    division is exact.  Returns the echelon rows (integer) and pivot columns.
    """
    m = _integer_rows(rows)
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            mi = m[i]
            f = mi[c]
            mr = m[r]
            for k in range(c + 1, n_cols):
                mi[k] = (p * mi[k] - f * mr[k]) // prev
            mi[c] = 0
        # rows above r+1 stay untouched; rows below now carry det-scaled entries
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def solve_exact(a: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], list[int]]:
    """A particular exact solution of ``a x = b`` (free variables set to 0).

    Returns ``(x, free_columns)``.  Raises :class:`SingularSystemError` when
    the system is inconsistent.
    """
    n_cols = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    ech, pivots = echelon_fraction_free(aug)
    if pivots and pivots[-1] == n_cols:
        raise SingularSystemError("inconsistent linear system")
    x = [Fraction(0)] * n_cols
    for row, c in reversed(list(zip(ech, pivots))):
        acc = Fraction(row[n_cols])
        for k in range(c + 1, n_cols):
            if row[k]:
                acc -= row[k] * x[k]
        x[c] = acc / row[c]
    free = [c for c in range(n_cols) if c not in set(pivots)]
    return x, free


def nullspace_exact(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right nullspace of ``a`` over the rationals."""
    n_cols = len(a[0])
    ech, pivots = echelon_fraction_free(a)
    pivset = set(pivots)
    basis = []
    for fcol in (c for c in range(n_cols) if c not in pivset):
        x = [Fraction(0)] * n_cols
        x[fcol] = Fraction(1)
        for row, c in reversed(list(zip(ech, pivots))):
            acc = Fraction(0)
            for k in range(c + 1, n_cols):
                if row[k]:
                    acc -= row[k] * x[k]
            x[c] = acc / row[c]
        basis.append(x)
    return basis
