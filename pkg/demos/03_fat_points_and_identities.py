"""
Fat points, saturation and the local identity
=============================================

The index of nilpotency of a fat point scheme is its largest multiplicity.
The products ideal decomposes over the coatoms and is saturated.
"""

import random

from nilfit import PolyRing, embed_affine, local_power_identity, verify_decomposition
from nilfit.fitting import FatPointScheme, dual_arrangement, fat_point_ideal, fat_point_nil

# 2P1 + 3P2 + P3 in P^2
Z = FatPointScheme.create([[1, 0, 0], [0, 1, 0], [1, 1, 1]], [2, 3, 1])
print("I_Z =", [str(g) for g in fat_point_ideal(Z).groebner()])
res = fat_point_nil(Z)
print("nil(I_Z) =", res.index, "(largest multiplicity:", max(Z.multiplicities), ")")

# I_(n-k+2) equals the intersection of the coatom ideals raised to nu - k + 2
ps = embed_affine([(0, 0), (1, 0), (2, 0), (0, 1), (1, 3)])
cert = verify_decomposition(dual_arrangement(ps))
print("exponents:", cert.exponents, " decomposition:", cert.decomposition, " saturated:", cert.saturated)

# Products of m generic forms in k - 1 variables generate a power of the maximal ideal.
rng = random.Random(3)
ring = PolyRing.standard(2)
forms = [ring.linear_form([rng.randint(1, 9), rng.randint(-9, -1)]) for _ in range(4)]
local = local_power_identity(4, 3, forms)
print("local identity holds:", local.holds, " exponent:", local.exponent)
