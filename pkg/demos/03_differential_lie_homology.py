#!/usr/bin/env python3
"""Homology of the free differential graded Lie algebra on x, dx.

With deg(x) = 2 even and d(x) = y, the homology over F_p is concentrated
in weights divisible by p, carried by two explicit families of cycles.
The weighted-dimension inequalities quantify how small homology is
compared to the whole algebra, which is what drives the growth bounds.
"""

from liegrowth.difflie import (
    boundary_growth,
    check_weight_inequalities,
    differential_pair,
    differentiate,
    homology,
    sigma,
    tau,
)
from liegrowth.freelie import FreeNAElement, embed_tensor

p = 3
gens, spec = differential_pair(p, 2)
x = FreeNAElement.generator(gens, "x")

print(f"Free differential pair over F_{p}: deg(x) = 2, d(x) = y\n")

print("weight | dim L | dim Z | dim B | dim H")
for w in range(1, 10):
    rep = homology(gens, spec, w)
    dims = [sum(r.dim_total for r in rep.rows),
            sum(r.dim_cycles for r in rep.rows),
            sum(r.dim_boundaries for r in rep.rows),
            rep.total_homology()]
    print(f"  {w:>4} | {dims[0]:>5} | {dims[1]:>5} | {dims[2]:>5} | {dims[3]:>5}")
print()

t1, s1 = tau(x, spec, 1), sigma(x, spec, 1)
print("The two weight-3 classes:")
print(f"  tau_1(x)   = {t1.to_json()}  (degree {t1.degree})")
print(f"  sigma_1(x) = {s1.to_json()}  (degree {s1.degree})")
print(f"  d(tau_1)   expands to zero: "
      f"{embed_tensor(differentiate(t1, spec)).is_zero()}")
print(f"  d(sigma_1) expands to zero: "
      f"{embed_tensor(differentiate(s1, spec)).is_zero()}\n")

print("Weighted-dimension inequalities (exact rationals):")
print("  k | dim^k L | dim^k H | dim^k B | H < L/p | B > (p-1)L/2p")
for row in check_weight_inequalities(gens, spec, 6):
    print(f"  {row.k} | {str(row.dim_l):>7} | {str(row.dim_h):>7} |"
          f" {str(row.dim_b):>7} | {row.homology_small!s:>7} |"
          f" {row.boundaries_large}")
print()

print("Cumulative boundary dimensions against the Witt lower bound:")
report = boundary_growth(gens, spec, 5)
for row in report.rows:
    print(f"  k={row.k}: boundaries through degree {2 * row.k} ="
          f" {row.cumulative_boundaries} > {row.lower_bound}")
