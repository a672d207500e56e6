"""Finite-N GUE density in the three coordinate systems.

Run: python3 demos/density_and_scaling.py
"""
import math

import numpy as np

from softedge.ensembles import global_density, gue_density_raw, semicircle, soft_edge_density
from softedge.expansion import R0, eval_combo
from softedge.specfun import adaptive_integrate

# raw: the density counts eigenvalues, so it integrates to N
for n in (1, 5, 40):
    total = adaptive_integrate(lambda x: gue_density_raw(n, x), -math.inf, math.inf)
    print(f"N={n:3d}  int rho = {total:.15f}")

# global: support tends to (-1, 1) and the shape to the semicircle
X = np.linspace(-0.9, 0.9, 7)
print("\nX        " + " ".join(f"{v:7.2f}" for v in X))
for n in (10, 100, 1000):
    print(f"N={n:<5d}  " + " ".join(f"{v:7.4f}" for v in global_density(n, X)))
print("limit    " + " ".join(f"{v:7.4f}" for v in semicircle(X)))

# soft edge: the largest eigenvalues, approaching Ai'^2 - y Ai^2
y = np.linspace(-4, 2, 7)
print("\ny        " + " ".join(f"{v:7.2f}" for v in y))
for n in (10, 100, 1000):
    print(f"N={n:<5d}  " + " ".join(f"{v:7.4f}" for v in soft_edge_density(n, y)))
print("limit    " + " ".join(f"{v:7.4f}" for v in eval_combo(R0, y)))

grid = np.linspace(-4, 2, 601)
for n in (16, 64, 256):
    err = np.max(np.abs(soft_edge_density(n, grid) - eval_combo(R0, grid)))
    print(f"sup |rho_s - r0| at N={n:3d}: {err:.3e}  (x N^(2/3) = {err * n ** (2 / 3):.3f})")
