"""Exact correction terms of the soft-edge expansion and how much each one buys.

Run: python3 demos/expansion_terms.py
"""
import math
import time
from fractions import Fraction

import numpy as np

from softedge.ensembles import soft_edge_density
from softedge.expansion import KernelConstant, compute_series, fit_kernel_constant
from softedge.io import series_report

t0 = time.perf_counter()
series = compute_series(4)
print(f"solved r_1..r_4 in {time.perf_counter() - t0:.2f} s\n")
print(series_report(compute_series(2)))

# truncation error E_J(N) = sup |rho - sum_{j<=J} N^{-2j/3} r_j| on [-4, 2]
y = np.linspace(-4, 2, 1201)
ns = (32, 64, 128, 256)
print("J  " + "".join(f"{'N=' + str(n):>12}" for n in ns) + "   rate (log2 of successive ratios)")
for J in range(5):
    errs = [np.max(np.abs(soft_edge_density(n, y) - series.evaluate(y, n, order=J))) for n in ns]
    rates = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    print(f"{J}  " + "".join(f"{e:12.3e}" for e in errs) + "   " + " ".join(f"{r:.2f}" for r in rates))
print("each term should add 2/3 to the rate; J >= 3 falls short (see below)")

# any leftover multiple of r0 is measured directly; c1 and c2 shrink as N grows,
# c3 does not, so the q(0) = 0 gauge stops matching the density at order 3
fit_y = np.linspace(-3, 1, 161)
for fit_ns in ([100, 200, 400], [400, 800, 1600]):
    cs = [fit_kernel_constant(series, j, soft_edge_density, fit_ns, fit_y) for j in (1, 2, 3)]
    print(f"\nfitted from N = {fit_ns}: " + ", ".join(f"c{j} = {c:+.2e}" for j, c in enumerate(cs, 1)))

# c1, c2 are finite-N fitting noise; keep only c3
for j in (1, 2):
    series.kernel_constants[j] = KernelConstant(Fraction(0), "gauge")
ns = (32, 64, 128, 256, 512)
print("\nJ=3 rates without and with the fitted c3 (expected 8/3 = 2.67)")
for with_c in (False, True):
    errs = [np.max(np.abs(soft_edge_density(n, y) - series.evaluate(y, n, order=3, with_constants=with_c))) for n in ns]
    print(f"  constants={with_c!s:5}: " + " ".join(f"{math.log2(a / b):.2f}" for a, b in zip(errs, errs[1:])))
