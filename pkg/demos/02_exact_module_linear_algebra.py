#!/usr/bin/env python3
"""Exact linear algebra over Z/p^s: Smith forms, images, splittings, Tor.

Everything here is integer arithmetic; the diagonal of a Smith form over
Z/27 reads off kernels, images and cokernels of any map of finitely
generated modules.
"""

from liegrowth.zpmod import (
    GradedModule,
    ModuleMorphism,
    RingSpec,
    dim_of,
    image_dims,
    smith_normal_form_matrix,
    split_injection_normalize,
    tensor_reduce,
    tor,
)

ring = RingSpec(3, 3)
print(f"Working over Z/{ring.modulus} (p = {ring.p}, s = {ring.s})\n")

a = [[2, 3, 0], [3, 9, 9], [0, 9, 18]]
u, uinv, v, vinv, vals = smith_normal_form_matrix(a, ring)
print("Smith form of", a)
print("  diagonal valuations:", vals, "->", [3 ** x % 27 for x in vals])
print("  so the cokernel is Z/9 + Z/27 and the kernel Z/3 + Z/27")
print("  (U A V is diagonal; U, V and their inverses are returned exactly)\n")

r9 = RingSpec(3, 2)
dom = GradedModule.single(r9, (2, 1))   # Z/9 + Z/3
cod = GradedModule.free(r9, 1)          # Z/9
phi = ModuleMorphism.from_dict(dom, cod, {0: ((1, 3),)})
print(f"phi: {dom} -> {cod} with matrix [1 3]")
print(f"  image decomposition: {image_dims(phi)}")
print(f"  top-order count equals the mod-3 rank of the matrix\n")

inj = ModuleMorphism.from_dict(
    GradedModule.free(r9, 1), GradedModule.single(r9, (2, 1)), {0: ((1,), (1,))}
)
change = split_injection_normalize(inj)
print("Normalizing the injection 1 |-> (1, 1) into Z/9 + Z/3:")
print("  new basis (columns):", change.matrix_at(0))
print("  order labels:", change.exponents_at(0))
print("  the image is now literally the first summand\n")

m = GradedModule.single(ring, (3, 1))
print(f"M = {m}")
print(f"  M (x) Z/9  = {tensor_reduce(m, 2)}")
print(f"  dim_9 of the reduction = {dim_of(tensor_reduce(m, 2), 2)}"
      f" = number of summands of exponent >= 2\n")

z3 = GradedModule.single(r9, (1,))
print(f"Tor over Z/9 of (Z/3, Z/3) = {tor(z3, z3)}")
free = GradedModule.free(r9, 2)
print(f"Tor against a free module vanishes: {tor(free, z3).is_zero()}")
