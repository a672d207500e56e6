"""Laplace transforms of the expansion terms and their first-order recursion.

Run: python3 demos/laplace_checks.py
"""
from softedge.expansion import R0, compute_series
from softedge.laplace import (
    DERIVED_FIRST_DERIVATIVE_COEFF,
    REFERENCE_FIRST_DERIVATIVE_COEFF,
    laplace_numeric,
    recursion_residual,
    u0_closed,
)

for g in (0.5, 1.0, 2.0, 3.0):
    num = laplace_numeric(R0, g)
    print(f"gamma={g}: quadrature {num:.12f}  closed form {u0_closed(g):.12f}")

series = compute_series(3)
print("\nrelative recursion residual 4g u_j' + (6 - g^3) u_j + g u_(j-1)'' + a u_(j-1)'")
for a in (REFERENCE_FIRST_DERIVATIVE_COEFF, DERIVED_FIRST_DERIVATIVE_COEFF):
    for j in (1, 2, 3):
        res = [recursion_residual(j, g, series, d1_coeff=a, relative=True) for g in (0.5, 1.0, 2.0)]
        print(f"  a={a} j={j}: " + "  ".join(f"{r:+.2e}" for r in res))
# y^2 f' - y f transforms to -g U'' - 3 U' after integrating by parts, hence a = 3
