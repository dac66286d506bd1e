"""
Minimum distance of a linear code from the same computation
============================================================

Columns of a k x n generator matrix over GF(p) are points of P^(k-1).
A codeword a^T G vanishes exactly at the points on the hyperplane a, so
the minimum distance is n - hyp. We compare with brute force.
"""

import random

import numpy as np

from nilfit import GF, PointSet, hyp_via_nil, min_distance
from nilfit.oracle import min_distance_bruteforce

rng = random.Random(1)
F = GF(7)

# a random 3 x 7 generator matrix with projectively distinct columns
while True:
    G = np.array([[rng.randrange(7) for _ in range(7)] for _ in range(3)])
    try:
        ps = PointSet.from_projective(G.T.tolist(), F)
        break
    except ValueError:
        continue
print("generator matrix:\n", G)

report = hyp_via_nil(ps)
md = min_distance(ps, report)
print("hyp =", report.hyp, " so d = n - hyp =", md.d)
print("exhaustive search over all 7^3 messages:", min_distance_bruteforce(ps))
for h, w in zip(report.hyperplanes, md.codewords):
    print("hyperplane", h.projective, "-> codeword", [int(c) for c in w])

# The Fano plane: all seven points of P^2 over GF(2) give the simplex code.
fano = PointSet.from_projective([[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1) if a or b or c], GF(2))
print("simplex code: d =", min_distance(fano).d)
