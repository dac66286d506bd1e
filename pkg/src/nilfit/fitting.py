"""The exact fitting problem through the index of nilpotency.

A point set in ``P^(k-1)`` is dualised to an arrangement of linear forms.
For a (k-2)-generic set, the ideal generated by all ``(n-k+2)``-fold
products of the forms has as radical the intersection of the coatom
ideals, and its index of nilpotency plus ``k - 2`` is the largest number
of points on one hyperplane. The colon ideal ``I : J^(nil-1)`` vanishes
exactly at the coatoms dual to the maximising hyperplanes.

>>> ps = embed_affine([(1, 0), (1, 1), (3, -1), (-3, 2)])
>>> report = hyp_via_nil(ps)
>>> report.hyp, report.nil, report.min_distance
(3, 2, 1)
>>> report.hyperplanes[0].affine
'x+2*y=1'
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence

from gmpy2 import mpq

from .errors import (
    CapExceededError,
    DegeneratePointSetError,
    DuplicatePointError,
    EmptyInputError,
    InternalInconsistencyError,
    NotGenericError,
)
from .fields import QQ, PrimeField
from .groebner import ResourceLimitError
from .ideals import (
    DEFAULT_LIMITS,
    Ideal,
    Limits,
    NilResult,
    contains_ideal,
    ideal_equal,
    ideal_power,
    intersect_all,
    nil_index,
    saturation,
    vanishing_ideal,
)
from .linalg import dot, normalize_projective, nullspace, rank
from .monomials import MonomialOrder
from .polynomial import Polynomial, PolyRing, format_polynomial, linear_coefficients, product

DEFAULT_MAX_POINTS = 14
DEFAULT_MAX_GENERATORS = 2000


# -- point sets -------------------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """Distinct points of ``P^(k-1)`` spanning the whole space.

    Coordinates are raw field values scaled so the first nonzero one is 1.
    ``labels`` are the 1-based input positions used in every report.
    ``affine`` marks sets produced by :func:`embed_affine`.
    """

    field: object
    k: int
    points: tuple
    labels: tuple
    affine: bool = False

    @classmethod
    def from_projective(cls, points: Sequence[Sequence], field=QQ, *, affine: bool = False, labels=None) -> PointSet:
        points = [list(p) for p in points]
        if not points:
            raise EmptyInputError("the point set is empty")
        k = len(points[0])
        if k < 2:
            raise DegeneratePointSetError("points need at least two homogeneous coordinates")
        if any(len(p) != k for p in points):
            raise DegeneratePointSetError("points have different numbers of coordinates")
        labels = tuple(labels) if labels is not None else tuple(range(1, len(points) + 1))
        normalized = []
        seen = {}
        for lab, p in zip(labels, points):
            v = [field.convert(c) for c in p]
            if not any(v):
                raise DegeneratePointSetError(f"point {lab} is the zero vector", witness=[lab])
            v = normalize_projective(v, field)
            if v in seen:
                raise DuplicatePointError(
                    f"points {seen[v]} and {lab} coincide projectively", witness=[seen[v], lab]
                )
            seen[v] = lab
            normalized.append(v)
        if rank(normalized, field) < k:
            raise DegeneratePointSetError(
                f"all {len(normalized)} points lie on one hyperplane of P^{k - 1}"
            )
        return cls(field, k, tuple(normalized), labels, affine)

    @property
    def n(self) -> int:
        return len(self.points)

    def ring(self, order: MonomialOrder | str | None = None) -> PolyRing:
        return PolyRing.standard(self.k, self.field, order)

    def scaled(self, factors: Sequence) -> list:
        """Coordinates with point ``i`` multiplied by ``factors[i]`` (for invariance tests)."""
        F = self.field
        return [[F.mul(F.convert(f), c) for c in p] for f, p in zip(factors, self.points)]


def embed_affine(points: Sequence[Sequence], field=QQ) -> PointSet:
    """Append a trailing coordinate 1 to affine points of ``A^(k-1)``."""
    points = list(points)
    if not points:
        raise EmptyInputError("the point set is empty")
    return PointSet.from_projective([list(p) + [1] for p in points], field, affine=True)


class GenericityCheck(NamedTuple):
    generic: bool
    witness: Optional[tuple]

    def __bool__(self):
        return self.generic


def check_generic(ps: PointSet) -> GenericityCheck:
    """Is every ``(k-1)``-subset of points independent? On failure, a violating subset (labels)."""
    k = ps.k
    if k <= 3:
        # distinct projective points are pairwise independent
        return GenericityCheck(True, None)
    for subset in itertools.combinations(range(ps.n), k - 1):
        if rank([ps.points[i] for i in subset], ps.field) < k - 1:
            return GenericityCheck(False, tuple(ps.labels[i] for i in subset))
    return GenericityCheck(True, None)


# -- arrangements and coatoms -------------------------------------------------------


@dataclass(frozen=True)
class Coatom:
    """A rank ``k-1`` flat: the projective point where ``nu`` forms vanish.

    ``incident_forms`` are 0-based form indices.
    """

    point: tuple
    nu: int
    incident_forms: tuple

    def ideal(self, ring: PolyRing, limits: Limits = DEFAULT_LIMITS) -> Ideal:
        """The linear prime of all forms vanishing at the point."""
        forms = [ring.linear_form(v) for v in nullspace([self.point], ring.field, ring.nvars)]
        return Ideal(forms, ring, limits=limits)


@dataclass(frozen=True)
class Arrangement:
    """Linear forms ``L_i`` whose coefficient vectors are the points of a :class:`PointSet`."""

    ring: PolyRing
    vectors: tuple
    forms: tuple

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def k(self) -> int:
        return self.ring.nvars

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], ring: PolyRing) -> Arrangement:
        F = ring.field
        vecs = tuple(tuple(F.convert(c) for c in v) for v in vectors)
        return cls(ring, vecs, tuple(ring.linear_form(v) for v in vecs))


def dual_arrangement(ps: PointSet, order: MonomialOrder | str | None = None) -> Arrangement:
    return Arrangement.from_vectors(ps.points, ps.ring(order))


def products_ideal(A: Arrangement, j: int, *, max_generators: int = DEFAULT_MAX_GENERATORS, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """``I_j(A)``: all products ``L_i1 ... L_ij`` with ``i1 < ... < ij``."""
    n = A.n
    if not 1 <= j <= n:
        raise ValueError(f"j must lie in [1, {n}], got {j}")
    count = math.comb(n, j)
    if count > max_generators:
        raise CapExceededError(f"I_{j} would have {count} generators (cap {max_generators})")
    gens = [product((A.forms[i] for i in combo), A.ring) for combo in itertools.combinations(range(n), j)]
    return Ideal(gens, A.ring, limits=limits)


def coatoms(A: Arrangement, labels: Sequence | None = None) -> List[Coatom]:
    """All coatoms, sorted by normalised point.

    Every ``(k-1)``-subset of forms must cut out a single projective point;
    a larger kernel raises :class:`NotGenericError` naming the subset.
    """
    F, k, n = A.ring.field, A.k, A.n
    labels = labels or tuple(range(1, n + 1))
    found = {}
    for subset in itertools.combinations(range(n), k - 1):
        ker = nullspace([A.vectors[i] for i in subset], F, k)
        if len(ker) != 1:
            raise NotGenericError(
                f"forms {[labels[i] for i in subset]} are linearly dependent",
                witness=[labels[i] for i in subset],
            )
        pt = normalize_projective(ker[0], F)
        if pt in found:
            continue
        incident = tuple(i for i in range(n) if not dot(A.vectors[i], pt, F))
        found[pt] = Coatom(pt, len(incident), incident)
    return [found[p] for p in sorted(found)]


def radical_of_products(
    A: Arrangement,
    cts: Sequence[Coatom] | None = None,
    *,
    limits: Limits = DEFAULT_LIMITS,
    method: str = "interpolate",
) -> Ideal:
    """Intersection of the coatom primes: the radical of ``I_(n-k+2)(A)``.

    ``method="interpolate"`` computes the vanishing ideal of the coatom
    points directly; ``method="intersect"`` intersects the linear primes
    by elimination. Both give the same reduced basis.
    """
    cts = coatoms(A) if cts is None else cts
    if method == "interpolate":
        return vanishing_ideal([c.point for c in cts], A.ring, limits=limits)
    if method == "intersect":
        return intersect_all([c.ideal(A.ring, limits) for c in cts])
    raise ValueError(f"unknown radical method {method!r}")


# -- reports ------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane ``sum a_i x_i = 0`` and the labels of the points on it."""

    coefficients: tuple  # first nonzero coefficient 1
    witnesses: tuple
    projective: str
    affine: Optional[str] = None
    at_infinity: bool = False

    def to_dict(self) -> dict:
        out = {"projective": self.projective, "affine": self.affine, "witnesses": list(self.witnesses)}
        if self.at_infinity:
            out["at_infinity"] = True
        return out


@dataclass(frozen=True)
class FitReport:
    k: int
    n: int
    hyp: int
    nil: int
    min_distance: int
    hyperplanes: tuple
    generic: bool = True
    extension: bool = False
    coatoms: tuple = field(default=(), repr=False, compare=False)
    nil_result: Optional[NilResult] = field(default=None, repr=False, compare=False)
    products: Optional[Ideal] = field(default=None, repr=False, compare=False)
    radical: Optional[Ideal] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "hyp": self.hyp,
            "nil": self.nil,
            "d": self.min_distance,
            "generic": self.generic,
            "extension": self.extension,
            "hyperplanes": [h.to_dict() for h in self.hyperplanes],
        }


def display_vector(a: Sequence, F) -> tuple:
    """Presentation scaling: primitive integers with positive last nonzero entry over QQ,
    last nonzero entry 1 over GF(p)."""
    last = next(c for c in reversed(a) if c)
    if isinstance(F, PrimeField):
        inv = F.inv(last)
        return tuple(F.mul(c, inv) for c in a)
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, int(c.denominator))
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    sign = 1 if last > 0 else -1
    return tuple(mpq(sign * c // g) for c in ints)


def dehomogenize(a: Sequence, ring: PolyRing) -> tuple:
    """Affine chart ``x_k = 1`` of ``sum a_i x_i = 0``.

    Returns ``(equation, at_infinity)``; the equation is ``None`` for the
    hyperplane at infinity. Over QQ the first nonzero coefficient is made positive.
    """
    F = ring.field
    k = ring.nvars
    a = [F.convert(c) for c in a]
    if not any(a[: k - 1]):
        return None, True
    lhs, rhs = a[: k - 1], F.neg(a[k - 1])
    if not isinstance(F, PrimeField):
        first = next(c for c in lhs if c)
        if first < 0:
            lhs, rhs = [-c for c in lhs], -rhs
    aring = PolyRing(ring.variables[: k - 1], F)
    return f"{format_polynomial(aring.linear_form(lhs))}={F.to_str(rhs)}", False


def _hyperplane(coatom: Coatom, ps: PointSet, ring: PolyRing) -> Hyperplane:
    F = ring.field
    shown = display_vector(coatom.point, F)
    projective = format_polynomial(ring.linear_form(shown))
    affine, at_inf = dehomogenize(shown, ring) if ps.affine else (None, False)
    return Hyperplane(
        coefficients=coatom.point,
        witnesses=tuple(ps.labels[i] for i in coatom.incident_forms),
        projective=projective,
        affine=affine,
        at_infinity=at_inf,
    )


# -- the main pipeline --------------------------------------------------------------------


def hyp_via_nil(
    ps: PointSet,
    *,
    order: MonomialOrder | str | None = None,
    limits: Limits = DEFAULT_LIMITS,
    max_points: int = DEFAULT_MAX_POINTS,
    max_generators: int = DEFAULT_MAX_GENERATORS,
) -> FitReport:
    """``hyp = nil(I_(n-k+2)(A)) + k - 2`` together with the maximising hyperplanes.

    Raises :class:`NotGenericError` for sets violating (k-2)-genericity and
    :class:`InternalInconsistencyError` if the algebraic answer disagrees with
    the coatom multiplicities.
    """
    k, n = ps.k, ps.n
    if n > max_points:
        raise CapExceededError(f"{n} points exceed the cap of {max_points}")
    gen = check_generic(ps)
    if not gen:
        raise NotGenericError(f"points {list(gen.witness)} do not span a hyperplane", witness=gen.witness)
    A = dual_arrangement(ps, order)
    j = n - k + 2
    I = products_ideal(A, j, max_generators=max_generators, limits=limits)
    cts = coatoms(A, ps.labels)
    J = radical_of_products(A, cts, limits=limits)
    if not contains_ideal(J, I):
        raise InternalInconsistencyError("the products ideal is not contained in the coatom radical")
    max_nu = max(c.nu for c in cts)
    try:
        res = nil_index(I, J, cap=max_nu - k + 2)
    except ResourceLimitError as exc:
        raise InternalInconsistencyError(f"colon chain overran its sharp bound: {exc}") from exc
    nil = res.index
    hyp = nil + k - 2
    if hyp != max_nu:
        raise InternalInconsistencyError(f"nil + k - 2 = {hyp} but the largest coatom multiplicity is {max_nu}")

    # nil = 1 means I : J^0 = I, which vanishes at every coatom (all of multiplicity k-1)
    Q = I if nil == 1 else res.chain[nil - 2]
    algebraic = [c for c in cts if all(not g.evaluate(c.point) for g in Q.groebner().elements)]
    combinatorial = [c for c in cts if c.nu == max_nu]
    if algebraic != combinatorial:
        raise InternalInconsistencyError("I : J^(nil-1) does not cut out the maximal coatoms")
    hyperplanes = tuple(_hyperplane(c, ps, A.ring) for c in algebraic)

    report = FitReport(
        k=k,
        n=n,
        hyp=hyp,
        nil=nil,
        min_distance=n - hyp,
        hyperplanes=hyperplanes,
        generic=True,
        extension=(k == 2),
        coatoms=tuple(cts),
        nil_result=res,
        products=I,
        radical=J,
    )
    check_report(report, ps)
    return report


def check_report(report: FitReport, ps: PointSet) -> None:
    """Raise :class:`InternalInconsistencyError` unless the report's invariants hold."""
    F = ps.field
    if report.hyp != report.nil + report.k - 2:
        raise InternalInconsistencyError("hyp != nil + k - 2")
    if report.min_distance != report.n - report.hyp:
        raise InternalInconsistencyError("d != n - hyp")
    index = {lab: i for i, lab in enumerate(ps.labels)}
    for h in report.hyperplanes:
        if len(h.witnesses) != report.hyp:
            raise InternalInconsistencyError(f"hyperplane {h.projective} has {len(h.witnesses)} witnesses")
        on = {ps.labels[i] for i, p in enumerate(ps.points) if not dot(h.coefficients, p, F)}
        if on != set(h.witnesses):
            raise InternalInconsistencyError(f"wrong witnesses for {h.projective}")
        if any(lab not in index for lab in h.witnesses):
            raise InternalInconsistencyError("unknown witness label")


def max_hyperplanes(ps: PointSet, **kwargs) -> list:
    """The hyperplanes holding ``hyp`` points, each with its witness labels."""
    return list(hyp_via_nil(ps, **kwargs).hyperplanes)


# -- minimum distance ------------------------------------------------------------


@dataclass(frozen=True)
class MinDistance:
    """``d = n - hyp`` with one minimum-weight codeword per maximising hyperplane."""

    d: int
    codewords: tuple = ()

    def to_dict(self, F) -> dict:
        return {"d": self.d, "codewords": [[F.to_str(c) for c in w] for w in self.codewords]}


def codeword(coefficients: Sequence, ps: PointSet) -> tuple:
    """``a^T G`` for the generator matrix ``G`` with the points as columns."""
    return tuple(dot(coefficients, p, ps.field) for p in ps.points)


def min_distance(ps: PointSet, report: FitReport | None = None, **kwargs) -> MinDistance:
    report = report or hyp_via_nil(ps, **kwargs)
    d = ps.n - report.hyp
    words = ()
    if isinstance(ps.field, PrimeField):
        words = tuple(codeword(h.coefficients, ps) for h in report.hyperplanes)
        for w in words:
            if sum(1 for c in w if c) != d:
                raise InternalInconsistencyError("a hyperplane codeword does not have weight d")
    return MinDistance(d, words)


# -- fat points ------------------------------------------------------------------


@dataclass(frozen=True)
class FatPointScheme:
    """``m_1 P_1 + ... + m_n P_n`` on distinct points of ``P^(k-1)``."""

    field: object
    points: tuple
    multiplicities: tuple

    @classmethod
    def create(cls, points: Sequence[Sequence], multiplicities: Sequence[int], field=QQ) -> FatPointScheme:
        points = list(points)
        mults = tuple(int(m) for m in multiplicities)
        if not points:
            raise EmptyInputError("a fat point scheme needs at least one point")
        if len(mults) != len(points):
            raise ValueError("need one multiplicity per point")
        if any(m < 1 for m in mults):
            raise ValueError("multiplicities must be at least 1")
        k = len(points[0])
        norm = []
        for i, p in enumerate(points, 1):
            if len(p) != k:
                raise DegeneratePointSetError("points have different numbers of coordinates")
            v = [field.convert(c) for c in p]
            if not any(v):
                raise DegeneratePointSetError(f"point {i} is the zero vector", witness=[i])
            v = normalize_projective(v, field)
            if v in norm:
                raise DuplicatePointError(f"point {i} repeats point {norm.index(v) + 1}", witness=[norm.index(v) + 1, i])
            norm.append(v)
        return cls(field, tuple(norm), mults)

    @property
    def k(self) -> int:
        return len(self.points[0])

    def ring(self, order=None) -> PolyRing:
        return PolyRing.standard(self.k, self.field, order)


def point_ideal(point: Sequence, ring: PolyRing, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    F = ring.field
    v = [F.convert(c) for c in point]
    return Ideal([ring.linear_form(w) for w in nullspace([v], F, ring.nvars)], ring, limits=limits)


def fat_point_ideal(Z: FatPointScheme, ring: PolyRing | None = None, *, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """``I_Z = I_P1^m1 ∩ ... ∩ I_Pn^mn``."""
    ring = ring or Z.ring()
    return intersect_all([ideal_power(point_ideal(p, ring, limits), m) for p, m in zip(Z.points, Z.multiplicities)])


def support_ideal(Z: FatPointScheme, ring: PolyRing | None = None, *, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """``I_X``, the (radical) ideal of the support."""
    ring = ring or Z.ring()
    return intersect_all([point_ideal(p, ring, limits) for p in Z.points])


def fat_point_nil(Z: FatPointScheme, ring: PolyRing | None = None, *, limits: Limits = DEFAULT_LIMITS) -> NilResult:
    ring = ring or Z.ring()
    I = fat_point_ideal(Z, ring, limits=limits)
    J = support_ideal(Z, ring, limits=limits)
    return nil_index(I, J, cap=max(Z.multiplicities) + 1)


# -- verifiable identities -------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionCertificate:
    """Outcome of checking the coatom decomposition and saturation of ``I_(n-k+2)``."""

    decomposition: bool
    saturated: bool
    products_basis: tuple
    intersection_basis: tuple
    saturation_basis: tuple
    exponents: tuple

    @property
    def holds(self) -> bool:
        return self.decomposition and self.saturated

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "decomposition": self.decomposition,
            "saturated": self.saturated,
            "exponents": list(self.exponents),
            "products_basis": list(self.products_basis),
            "intersection_basis": list(self.intersection_basis),
            "saturation_basis": list(self.saturation_basis),
        }


def verify_decomposition(A: Arrangement, *, limits: Limits = DEFAULT_LIMITS, max_generators: int = DEFAULT_MAX_GENERATORS) -> DecompositionCertificate:
    """Check ``I_(n-k+2) = ∩ I(X)^(nu(X)-k+2)`` over coatoms, and ``I = I^sat``."""
    k, n = A.k, A.n
    cts = coatoms(A)
    I = products_ideal(A, n - k + 2, max_generators=max_generators, limits=limits)
    exps = tuple(c.nu - k + 2 for c in cts)
    inter = intersect_all([ideal_power(c.ideal(A.ring, limits), e) for c, e in zip(cts, exps)])
    sat = saturation(I, Ideal.irrelevant(A.ring, limits=limits))
    as_text = lambda ideal: tuple(str(g) for g in ideal.groebner().elements)  # noqa: E731
    return DecompositionCertificate(
        decomposition=ideal_equal(I, inter),
        saturated=ideal_equal(I, sat),
        products_basis=as_text(I),
        intersection_basis=as_text(inter),
        saturation_basis=as_text(sat),
        exponents=exps,
    )


@dataclass(frozen=True)
class LocalIdentity:
    holds: bool
    exponent: int
    code_distance: int


def local_power_identity(m: int, k: int, forms: Sequence[Polynomial], *, limits: Limits = DEFAULT_LIMITS) -> LocalIdentity:
    """``<(m-k+2)-fold products of the forms> = <x_1..x_(k-1)>^(m-k+2)``.

    ``forms`` are ``m`` linear forms in ``k - 1`` variables, any ``k - 1``
    of them independent. The local code they generate has minimum
    distance ``m - k + 2``, which is recomputed here by counting the most
    forms on one hyperplane of ``K^(k-1)``.
    """
    forms = list(forms)
    if len(forms) != m:
        raise ValueError(f"expected {m} forms, got {len(forms)}")
    if m < k - 1:
        raise ValueError("need m >= k - 1")
    ring = forms[0].ring
    if ring.nvars != k - 1:
        raise ValueError(f"forms must live in k - 1 = {k - 1} variables")
    F = ring.field
    vecs = [linear_coefficients(f) for f in forms]
    for subset in itertools.combinations(range(m), k - 1):
        if rank([vecs[i] for i in subset], F) < k - 1:
            raise NotGenericError(f"forms {[i + 1 for i in subset]} are dependent", witness=[i + 1 for i in subset])
    e = m - k + 2
    lhs = Ideal([product((forms[i] for i in c), ring) for c in itertools.combinations(range(m), e)], ring, limits=limits)
    rhs = ideal_power(Ideal(ring.gens, ring, limits=limits), e)

    most = 0
    if k - 1 > 1:
        for subset in itertools.combinations(range(m), k - 2):
            ker = nullspace([vecs[i] for i in subset], F, k - 1)
            for normal in ker[:1]:
                most = max(most, sum(1 for v in vecs if not dot(v, normal, F)))
    return LocalIdentity(ideal_equal(lhs, rhs), e, m - most)
