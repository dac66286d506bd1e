"""
Fitting a line through the most points, exactly
================================================

Four points in the plane, three of them on one line. We recover that line
from the colon ideals of a products-of-linear-forms ideal.
"""

from nilfit import embed_affine, hyp_via_nil
from nilfit.fitting import coatoms, dual_arrangement, products_ideal, radical_of_products

# Affine points get a trailing coordinate 1 and become points of P^2,
# stored scaled so the first nonzero coordinate is 1.
ps = embed_affine([(1, 0), (1, 1), (3, -1), (-3, 2)])
print("points:", [tuple(str(c) for c in p) for p in ps.points])

# Each point (a, b, c) gives the linear form a*x + b*y + c*z.
A = dual_arrangement(ps)
print("forms:", [str(L) for L in A.forms])

# I is generated by all products of n - k + 2 = 3 of the forms.
I = products_ideal(A, 3)
print("I_3 has", len(I.generators), "generators")

# Its radical J is the ideal of the coatoms: intersection points of the lines.
cts = coatoms(A)
print("coatom multiplicities:", [c.nu for c in cts])
J = radical_of_products(A, cts)

# The whole pipeline: walk I : J, I : J^2, ... until the unit ideal.
report = hyp_via_nil(ps)
for t, Q in enumerate(report.nil_result.chain, 1):
    print(f"I : J^{t} =", [str(g) for g in Q.groebner()])

print("nil =", report.nil, " hyp = nil + k - 2 =", report.hyp, " d =", report.min_distance)
for h in report.hyperplanes:
    print("line:", h.projective, "= 0, affine", h.affine, "through points", h.witnesses)
