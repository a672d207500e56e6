"""Spectral moments: closed forms, quadrature, and the beta <-> 4/beta duality.

Run: python3 demos/moments_and_duality.py
"""
from fractions import Fraction

from softedge.moments import duality_check, fit_inverse_powers, moment_closed_form, moment_quadrature

print("GUE moments by quadrature vs closed form")
for n in (1, 2, 4, 10):
    for k in (1, 2):
        q = moment_quadrature(k, n)
        c = moment_closed_form(k, 2, n)
        print(f"  N={n:2d} m{2 * k} = {q:.15f}   exact {str(c):>8}   diff {q - float(c):+.1e}")

print("\nbeta dependence of m4 at N = 10")
for b in (Fraction(1, 2), 1, 2, 4, 8):
    print(f"  beta={str(b):>3}: {moment_closed_form(2, b, 10)}")

print("\nduality m(beta; N) = m(4/beta; -beta N / 2):",
      all(duality_check(k, b, n) for k in (1, 2) for b in (1, 4, Fraction(2, 3)) for n in (3, 11)))

# at beta = 2 only even powers of 1/N occur
ns = [10, 20, 40, 80, 160]
coef = fit_inverse_powers(ns, [moment_quadrature(3, n) for n in ns], 4)
print("\nm6 fitted in powers of 1/N:", " ".join(f"{c:+.6f}" for c in coef))
print("expected (5 + 10/N^2) / 8  ->  0.625, 0, 1.25, 0, 0")
