#!/usr/bin/env python3
"""Witt numbers, basic products, and their asymptotics.

The dimension of the weight-k slice of a free Lie algebra on n ungraded
generators is the Witt number W_n(k), and the basic products of weight k
realize a basis of that slice.  This script prints the first few of each
and shows the ratio k * W_n(k) / n^k creeping up to 1.
"""

from liegrowth import basic_products, hall_basis, witt, witt_asymptotic
from liegrowth.freelie import GeneratorSet, tree_to_names
from liegrowth.zpmod import RingSpec

print("Witt numbers W_n(k)")
print("k:      " + "".join(f"{k:>6}" for k in range(1, 11)))
for n in (2, 3):
    print(f"W_{n}(k): " + "".join(f"{witt(n, k):>6}" for k in range(1, 11)))
print()

# name the two generators so the products print readably
gens = GeneratorSet.build([("a", 1), ("b", 1)], RingSpec(2, 1))
basis = hall_basis(2, 5)
print("Basic products on two generators, by weight:")
for k in range(1, 6):
    trees = basis.at_weight(k)
    shown = ", ".join(str(tree_to_names(t, gens)).replace("'", "") for t in trees)
    print(f"  weight {k} ({len(trees)} = W_2({k})): {shown}")
print()

print("Counts agree with the Witt formula far beyond what fits on screen:")
for k in (8, 10, 12):
    print(f"  |basic products of weight {k}| = {len(basic_products(2, k))}"
          f" = W_2({k}) = {witt(2, k)}")
print()

print("The ratio k*W_2(k)/2^k tends to 1:")
for k, ratio in witt_asymptotic(2, 20):
    if k in (1, 2, 5, 10, 14, 20):
        print(f"  k={k:>2}: {ratio} = {float(ratio):.6f}")
