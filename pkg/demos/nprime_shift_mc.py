"""Monte Carlo look at the shifted size N' = N + (beta - 2)/(2 beta) at the soft edge.

At beta = 1 the two scalings are compared against both the GUE edge density
r0 and the GOE edge density.  Takes about a minute.

Run: python3 demos/nprime_shift_mc.py [reps]
"""
import sys

from softedge.ensembles import EnsembleSpec, soft_edge_limit_density
from softedge.expansion import R0, eval_combo
from softedge.mc import edge_histogram, estimate_moment, histogram_l1_to, sample_tridiagonal
from softedge.moments import moment_closed_form

reps = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000
targets = {"r0 (beta=2 limit)": lambda y: eval_combo(R0, y), "beta=1 limit": lambda y: soft_edge_limit_density(y, 1)}

for n in (20, 50):
    batch = sample_tridiagonal(EnsembleSpec(1, n), reps, seed=7 + n)
    h_np, h_n = edge_histogram(batch, True), edge_histogram(batch, False)
    print(f"beta=1 N={n} reps={reps}")
    for name, f in targets.items():
        print(f"  L1 to {name:18s}: withN' {histogram_l1_to(h_np, f):.4f}   withN {histogram_l1_to(h_n, f):.4f}")


# beta = 3 has no closed-form edge density here; report the moment check and the
# sign of the shift only
batch = sample_tridiagonal(EnsembleSpec(3, 50), reps // 5, seed=3)
v, se = estimate_moment(batch, 1)
print(f"beta=3 N=50: N' - N = {batch.spec.nprime - 50:+.4f}; m2 = {v:.5f} +- {se:.5f} "
      f"(closed form {float(moment_closed_form(1, 3, 50)):.5f})")
