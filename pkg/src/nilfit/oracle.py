"""Brute-force verifiers, kept free of colon ideals and of the pipeline's linear algebra.

* :func:`hyp_bruteforce` -- every hyperplane spanned by ``k - 1`` points,
  normal vector from cofactors, incidences counted directly.
* :func:`min_distance_bruteforce` -- minimum weight over all messages.
* :func:`nil_bruteforce` -- smallest ``s`` with every ``s``-fold product
  of the radical's generators in the ideal.

Also the seeded random inputs used by the test-suite and ``fit verify``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from .errors import FitError, NotGenericError
from .fields import QQ, PrimeField
from .groebner import ResourceLimitError
from .ideals import Ideal
from .fitting import FatPointScheme, FitReport, PointSet, check_generic

MAX_MESSAGES = 10**7
MAX_PRODUCTS = 20000


class OracleNotApplicable(ValueError):
    pass


def _det(M: list, F):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return F.sub(F.mul(M[0][0], M[1][1]), F.mul(M[0][1], M[1][0]))
    total = F.zero
    for j, a in enumerate(M[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = F.mul(a, _det(minor, F))
        total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
    return total


def spanned_hyperplane(rows: Sequence[Sequence], F):
    """Normal vector of the span of ``k - 1`` vectors in ``K^k`` (cofactor expansion),
    or ``None`` when they are dependent."""
    rows = [list(r) for r in rows]
    k = len(rows[0])
    normal = []
    for j in range(k):
        minor = [r[:j] + r[j + 1:] for r in rows]
        c = _det(minor, F) if minor else F.one
        normal.append(c if j % 2 == 0 else F.neg(c))
    if not any(normal):
        return None
    lead = next(c for c in normal if c)
    inv = F.inv(lead)
    return tuple(F.mul(c, inv) for c in normal)


def _on(a, p, F) -> bool:
    s = F.zero
    for x, y in zip(a, p):
        s = F.add(s, F.mul(x, y))
    return not s


@dataclass(frozen=True)
class BruteForceFit:
    hyp: int
    hyperplanes: tuple  # ((coefficients, witness labels), ...) sorted by coefficients


def hyp_bruteforce(ps: PointSet) -> BruteForceFit:
    """Largest number of points on a hyperplane spanned by ``k - 1`` of them."""
    F, k = ps.field, ps.k
    best = 0
    planes = {}
    for subset in itertools.combinations(range(ps.n), k - 1):
        a = spanned_hyperplane([ps.points[i] for i in subset], F)
        if a is None:
            raise NotGenericError(
                f"points {[ps.labels[i] for i in subset]} do not span a hyperplane",
                witness=[ps.labels[i] for i in subset],
            )
        if a in planes:
            continue
        wit = tuple(ps.labels[i] for i, p in enumerate(ps.points) if _on(a, p, F))
        planes[a] = wit
        best = max(best, len(wit))
    top = tuple(sorted((a, w) for a, w in planes.items() if len(w) == best))
    return BruteForceFit(best, top)


def min_distance_bruteforce(ps: PointSet, cap: int = MAX_MESSAGES) -> int:
    """Minimum Hamming weight of ``x^T G`` over nonzero messages ``x`` in ``GF(p)^k``."""
    F = ps.field
    if not isinstance(F, PrimeField):
        raise OracleNotApplicable("exhaustive minimum distance needs a finite field")
    p, k = F.p, ps.k
    if p**k > cap:
        raise ResourceLimitError(f"{p}^{k} messages exceed the cap of {cap}")
    G = np.array([[int(c) for c in pt] for pt in ps.points], dtype=np.int64).T  # k x n
    msgs = np.indices((p,) * k, dtype=np.int64).reshape(k, -1).T[1:]
    words = (msgs @ G) % p
    return int(np.count_nonzero(words, axis=1).min())


def nil_bruteforce(I: Ideal, J: Ideal, cap: int = 64, max_products: int = MAX_PRODUCTS) -> int:
    """Smallest ``s`` with all ``s``-fold products of ``J``'s generators in ``I``."""
    gens = list(J.generators)
    gb = I.groebner()
    if not gens:
        return 1
    for s in range(1, cap + 1):
        if math.comb(len(gens) + s - 1, s) > max_products:
            raise ResourceLimitError(f"more than {max_products} products of degree {s}")
        if all(gb.contains(_prod(gens, c, I.ring)) for c in itertools.combinations_with_replacement(range(len(gens)), s)):
            return s
    raise ResourceLimitError(f"J^{cap} not contained in I")


def _prod(gens, combo, ring):
    p = ring.one
    for i in combo:
        p = p * gens[i].change_ring(ring)
    return p


# -- comparison reports -------------------------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    oracle: object
    algebraic: object
    agree: bool
    witnesses: tuple = ()

    def to_dict(self) -> dict:
        out = {"quantity": self.quantity, "oracle": self.oracle, "algebraic": self.algebraic, "agree": self.agree}
        if self.witnesses:
            out["witnesses"] = [list(w) for w in self.witnesses]
        return out


def compare_with_oracles(ps: PointSet, report: FitReport, *, nil_products: int = 64) -> List[OracleReport]:
    """Cross-check a pipeline report against every applicable brute-force route."""
    F = ps.field
    out = []
    bf = hyp_bruteforce(ps)
    out.append(OracleReport("hyp", bf.hyp, report.hyp, bf.hyp == report.hyp))
    alg = tuple(sorted((h.coefficients, h.witnesses) for h in report.hyperplanes))
    out.append(
        OracleReport(
            "hyperplanes",
            [_coeff_text(a, F) for a, _ in bf.hyperplanes],
            [_coeff_text(a, F) for a, _ in alg],
            alg == bf.hyperplanes,
            tuple(w for _, w in bf.hyperplanes),
        )
    )
    if isinstance(F, PrimeField) and F.p**ps.k <= MAX_MESSAGES:
        d = min_distance_bruteforce(ps)
        out.append(OracleReport("min_distance", d, report.min_distance, d == report.min_distance))
    if report.products is not None and report.radical is not None:
        gens = len(report.radical.generators)
        if math.comb(gens + report.nil - 1, report.nil) <= nil_products:
            s = nil_bruteforce(report.products, report.radical, cap=report.nil + 1, max_products=nil_products)
            out.append(OracleReport("nil", s, report.nil, s == report.nil))
    return out


def _coeff_text(a, F) -> list:
    return [F.to_str(c) for c in a]


# -- seeded random inputs ------------------------------------------------------------


def _random_vector(rng: random.Random, k: int, box: int) -> list:
    while True:
        v = [rng.randint(-box, box) for _ in range(k)]
        if any(v):
            return v


def random_generic_pointset(
    rng: random.Random,
    k: int,
    n: int,
    *,
    planted: int = 0,
    box: int = 9,
    field=QQ,
    max_tries: int = 10000,
) -> PointSet:
    """``n`` integer points in ``P^(k-1)``, resampled until valid and (k-2)-generic.

    With ``planted >= k - 1``, that many points are drawn on one random
    hyperplane (as small integer combinations of ``k - 1`` spanning vectors).
    """
    if planted and not k - 1 <= planted < n:
        raise ValueError("planted subset must have size in [k-1, n-1]")
    for _ in range(max_tries):
        pts = []
        if planted:
            base = [_random_vector(rng, k, box) for _ in range(k - 1)]
            for _ in range(planted):
                c = _random_vector(rng, k - 1, 3)
                pts.append([sum(ci * b[j] for ci, b in zip(c, base)) for j in range(k)])
        while len(pts) < n:
            pts.append(_random_vector(rng, k, box))
        try:
            ps = PointSet.from_projective(pts, field)
        except FitError:
            continue
        if check_generic(ps):
            return ps
    raise RuntimeError("could not draw a generic point set; loosen the parameters")


def random_fat_point_scheme(rng: random.Random, k: int, npoints: int, max_mult: int, *, box: int = 5, field=QQ, max_tries: int = 1000) -> FatPointScheme:
    for _ in range(max_tries):
        pts = [_random_vector(rng, k, box) for _ in range(npoints)]
        mults = [rng.randint(1, max_mult) for _ in range(npoints)]
        try:
            return FatPointScheme.create(pts, mults, field)
        except FitError:
            continue
    raise RuntimeError("could not draw distinct support points")


@dataclass
class TrialRecord:
    trial: int
    k: int
    n: int
    planted: int
    hyp: int
    nil: int
    oracle_hyp: int
    agree: bool
    checks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "k": self.k,
            "n": self.n,
            "planted": self.planted,
            "hyp": self.hyp,
            "nil": self.nil,
            "oracle_hyp": self.oracle_hyp,
            "agree": self.agree,
            "checks": self.checks,
        }


def equivalence_trial_params(rng: random.Random, trial: int, *, max_n3: int = 10, max_n4: int = 8) -> tuple:
    """``(k, n, planted)`` for trial number ``trial``: k alternates 3/4, odd-numbered
    pairs of trials plant a large collinear/coplanar subset."""
    k = 3 if trial % 2 == 0 else 4
    n = rng.randint(k + 1, max_n3 if k == 3 else max_n4)
    planted = 0
    if (trial // 2) % 2 == 1:
        planted = rng.randint(k, n - 1)
    return k, n, planted


def run_equivalence_trials(seed: int, trials: int, *, field=QQ, max_n3: int = 10, max_n4: int = 8, pipeline=None) -> List[TrialRecord]:
    """Seeded random comparison of the nilpotency pipeline with brute force."""
    from .fitting import hyp_via_nil

    pipeline = pipeline or hyp_via_nil
    rng = random.Random(seed)
    records = []
    for t in range(trials):
        k, n, planted = equivalence_trial_params(rng, t, max_n3=max_n3, max_n4=max_n4)
        ps = random_generic_pointset(rng, k, n, planted=planted, field=field)
        report = pipeline(ps)
        checks = compare_with_oracles(ps, report)
        records.append(
            TrialRecord(
                trial=t + 1,
                k=k,
                n=n,
                planted=planted,
                hyp=report.hyp,
                nil=report.nil,
                oracle_hyp=checks[0].oracle,
                agree=all(c.agree for c in checks),
                checks=[c.quantity for c in checks],
            )
        )
    return records
