"""Ideals of a polynomial ring: membership, equality, intersection, quotient,
saturation, powers and the index of nilpotency.

Intersections eliminate an auxiliary variable ``_t`` from ``t*I + (1-t)*J``.
For homogeneous inputs ``t`` gets degree 0, the extended ideal stays
homogeneous in the original variables, and a graded elimination order
keeps the computation degree-by-degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence

from .groebner import (
    DEFAULT_MAX_PAIRS,
    DEFAULT_MAX_TERMS,
    GroebnerBasis,
    ResourceLimitError,
    buchberger,
)
from .linalg import nullspace, row_echelon
from .monomials import MonomialOrder
from .polynomial import Polynomial, PolyRing, RingMismatchError

DEFAULT_NIL_CAP = 64
_AUX = "_t"


@dataclass(frozen=True)
class Limits:
    """Resource caps handed to every Groebner computation of an ideal."""

    max_pairs: int = DEFAULT_MAX_PAIRS
    max_terms: int = DEFAULT_MAX_TERMS
    chain: bool = True

    def __post_init__(self):
        if self.max_pairs < 1 or self.max_terms < 1:
            raise ValueError("resource caps must be positive")


DEFAULT_LIMITS = Limits()


class Ideal:
    """A finitely generated ideal; its reduced Groebner basis is computed once, on demand."""

    __slots__ = ("ring", "generators", "limits", "_gb")

    def __init__(self, generators: Iterable[Polynomial], ring: PolyRing | None = None, *, limits: Limits = DEFAULT_LIMITS):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("pass a ring for the zero ideal")
            ring = gens[0].ring
        for g in gens:
            if g.ring.variables != ring.variables or g.ring.field != ring.field:
                raise RingMismatchError(f"generator {g} is not in {ring}")
        self.ring = ring
        self.generators = tuple(g.change_ring(ring) for g in gens if g)
        self.limits = limits
        self._gb = None

    @classmethod
    def _with_basis(cls, gb: GroebnerBasis, ring: PolyRing, limits: Limits) -> Ideal:
        I = cls(gb.elements, ring, limits=limits)
        if gb.order == ring.order:
            I._gb = gb
        return I

    @classmethod
    def unit(cls, ring: PolyRing, *, limits: Limits = DEFAULT_LIMITS) -> Ideal:
        return cls([ring.one], ring, limits=limits)

    @classmethod
    def irrelevant(cls, ring: PolyRing, *, limits: Limits = DEFAULT_LIMITS) -> Ideal:
        return cls(ring.gens, ring, limits=limits)

    @classmethod
    def parse(cls, texts: Sequence[str], ring: PolyRing) -> Ideal:
        return cls([ring.parse(t) for t in texts], ring)

    def groebner(self) -> GroebnerBasis:
        """Reduced Groebner basis for the ring's order (cached)."""
        gb = self._gb
        if gb is None:
            gb = buchberger(
                self.generators,
                self.ring.order,
                ring=self.ring,
                chain=self.limits.chain,
                max_pairs=self.limits.max_pairs,
                max_terms=self.limits.max_terms,
            )
            self._gb = gb
        return gb

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __contains__(self, f: Polynomial) -> bool:
        return ideal_member(f, self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(self.groebner())

    def __repr__(self):
        return "Ideal<" + ", ".join(str(g) for g in self.generators) + ">"

    def __mul__(self, other: Ideal) -> Ideal:
        _check_same(self, other)
        return Ideal([f * g for f in self.generators for g in other.generators], self.ring, limits=self.limits)

    def __add__(self, other: Ideal) -> Ideal:
        _check_same(self, other)
        return Ideal(self.generators + other.generators, self.ring, limits=self.limits)

    def __pow__(self, t: int) -> Ideal:
        return ideal_power(self, t)

    def __and__(self, other: Ideal) -> Ideal:
        return ideal_intersect(self, other)

    def __truediv__(self, other: Ideal) -> Ideal:
        return ideal_quotient(self, other)


def _check_same(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError(f"ideals live in different rings: {I.ring} vs {J.ring}")


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    if f.ring.variables != I.ring.variables or f.ring.field != I.ring.field:
        raise RingMismatchError(f"{f} is not in {I.ring}")
    if not f:
        return True
    return I.groebner().contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Equality of reduced Groebner bases under the common ring order."""
    _check_same(I, J)
    return I.groebner().elements == J.groebner().elements


def is_unit_ideal(I: Ideal) -> bool:
    return I.groebner().is_unit


def contains_ideal(I: Ideal, J: Ideal) -> bool:
    """True if ``J`` is a subset of ``I``."""
    _check_same(I, J)
    gb = I.groebner()
    return all(gb.contains(g) for g in J.generators)


def ideal_power(I: Ideal, t: int) -> Ideal:
    """``I^t`` generated by all t-fold products of generators."""
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"ideal powers need t >= 1, got {t!r}")
    if t == 1:
        return I
    ring = I.ring
    gens = []
    seen = set()
    for combo in itertools.combinations_with_replacement(range(len(I.generators)), t):
        p = ring.one
        for i in combo:
            p = p * I.generators[i]
        if p not in seen:
            seen.add(p)
            gens.append(p)
    return Ideal(gens, ring, limits=I.limits)


def _extended_ring(ring: PolyRing, homogeneous: bool) -> PolyRing:
    k = ring.nvars
    kind = MonomialOrder.graded_elimination if homogeneous else MonomialOrder.elimination
    return PolyRing((_AUX,) + ring.variables, ring.field, kind(k + 1, 1))


def _lift(f: Polynomial, ext: PolyRing, t_power: int = 0) -> Polynomial:
    return Polynomial(ext, {(t_power,) + m: c for m, c in f._d.items()})


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    _check_same(I, J)
    ring, limits = I.ring, I.limits
    if I.is_zero or J.is_zero:
        return Ideal([], ring, limits=limits)
    if is_unit_ideal(I):
        return J
    if is_unit_ideal(J):
        return I
    homogeneous = I.is_homogeneous and J.is_homogeneous
    ext = _extended_ring(ring, homogeneous)
    gens = [_lift(f, ext, 1) for f in _small_generators(I)]
    for g in _small_generators(J):
        lg = _lift(g, ext)
        gens.append(lg - _lift(g, ext, 1))
    gb = buchberger(gens, ext.order, ring=ext, chain=limits.chain, max_pairs=limits.max_pairs, max_terms=limits.max_terms)
    kept = [Polynomial(ring, {m[1:]: c for m, c in g._d.items()}) for g in gb if g.leading_monomial[0] == 0]
    result = Ideal(kept, ring, limits=limits)
    if ring.order.kind == "grevlex":
        # The t-free part of the reduced basis is already the reduced grevlex basis.
        elements = tuple(sorted(kept, key=lambda p: ring.order.encode(p.leading_monomial)))
        result._gb = GroebnerBasis(ring, ring.order, elements, {"via": "elimination"})
    return result


def _small_generators(I: Ideal) -> tuple:
    if I._gb is not None and len(I._gb.elements) <= len(I.generators):
        return I._gb.elements
    return I.generators


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    """Intersection of several ideals, combined pairwise in a balanced tree."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("intersection of no ideals")
    while len(ideals) > 1:
        nxt = [ideal_intersect(ideals[i], ideals[i + 1]) for i in range(0, len(ideals) - 1, 2)]
        if len(ideals) % 2:
            nxt.append(ideals[-1])
        ideals = nxt
    return ideals[0]


def quotient_by_element(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f = (1/f) * (I ∩ <f>)``."""
    ring = I.ring
    if not f:
        raise ZeroDivisionError("quotient by the zero polynomial")
    if f.is_constant() or is_unit_ideal(I):
        return I
    if ideal_member(f, I):
        return Ideal.unit(ring, limits=I.limits)
    inter = ideal_intersect(I, Ideal([f], ring, limits=I.limits))
    quo = [g.exact_div(f) for g in inter.groebner().elements]
    return Ideal(quo, ring, limits=I.limits)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``I : J = {g : g*J ⊆ I}``, intersecting ``I : f`` over generators ``f`` of ``J``.

    A generator ``f`` is skipped when the running intersection ``Q`` already
    satisfies ``Q*f ⊆ I`` (then ``Q ⊆ I : f`` and intersecting changes nothing).
    """
    _check_same(I, J)
    if J.is_zero:
        raise ZeroDivisionError("quotient by the zero ideal")
    gens = J.groebner().elements
    if len(gens) > len(J.generators):
        gens = J.generators
    gb = I.groebner()
    Q = None
    for f in gens:
        if Q is not None and all(gb.contains(g * f) for g in Q.groebner().elements):
            continue
        q = quotient_by_element(I, f)
        if is_unit_ideal(q):
            continue
        Q = q if Q is None else ideal_intersect(Q, q)
    if Q is None:
        return Ideal.unit(I.ring, limits=I.limits)
    return Q


def saturation(I: Ideal, J: Ideal, *, max_steps: int = DEFAULT_NIL_CAP) -> Ideal:
    """``I : J^∞``: iterate quotients until two consecutive iterates agree."""
    current = I
    for _ in range(max_steps):
        nxt = ideal_quotient(current, J)
        if ideal_equal(nxt, current):
            return current
        current = nxt
    raise ResourceLimitError(f"saturation did not stabilise within {max_steps} quotients")


@dataclass(frozen=True)
class NilResult:
    """``index`` is the smallest s with ``J^s ⊆ I``; ``chain[t-1] = I : J^t``."""

    index: int
    chain: tuple = field(repr=False)

    def is_ascending(self) -> bool:
        return all(contains_ideal(b, a) for a, b in zip(self.chain, self.chain[1:]))


def nil_index(I: Ideal, J: Ideal, cap: int = DEFAULT_NIL_CAP) -> NilResult:
    """Index of nilpotency of ``I`` given its radical ``J``.

    Walks ``I : J, (I : J) : J, ...`` until the unit ideal appears. The
    caller vouches that ``J`` is the radical of ``I``; running past ``cap``
    quotients means it is not (or the cap is too small).
    """
    _check_same(I, J)
    if cap < 1:
        raise ValueError("cap must be positive")
    chain: List[Ideal] = []
    current = I
    for s in range(1, cap + 1):
        current = ideal_quotient(current, J)
        chain.append(current)
        if is_unit_ideal(current):
            return NilResult(s, tuple(chain))
    raise ResourceLimitError(f"J^{cap} is still not contained in I; is J really the radical?")


def _monomials_of_degree(k: int, d: int):
    if k == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _monomials_of_degree(k - 1, d - e):
            yield (e,) + rest


def vanishing_ideal(points: Sequence[Sequence], ring: PolyRing, *, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """Homogeneous ideal of distinct projective points, by degree-wise interpolation.

    In each degree ``d`` the kernel of the evaluation map on degree-``d``
    monomials is put in reduced echelon form with columns in decreasing
    monomial order; rows whose leading monomial is new to the leading
    ideal are basis candidates. Reduced points have their ideal generated
    in degrees up to one more than the first degree where the Hilbert
    function reaches the number of points; a closing Buchberger run
    certifies (and if necessary completes) the reduced basis.
    """
    F, k = ring.field, ring.nvars
    pts = []
    for p in points:
        v = [F.convert(c) for c in p]
        if len(v) != k or not any(v):
            raise ValueError(f"bad projective point {p!r}")
        pts.append(v)
    s = len(pts)
    if s == 0:
        return Ideal.unit(ring, limits=limits)
    order = ring.order
    found_leads: list = []
    candidates: list = []
    reached = None
    d = 0
    while True:
        d += 1
        mons = sorted(_monomials_of_degree(k, d), key=order.encode, reverse=True)
        evals = []
        for p in pts:
            row = []
            for m in mons:
                v = F.one
                for c, e in zip(p, m):
                    if e:
                        v = F.mul(v, c**e)
                row.append(v)
            evals.append(row)
        kernel = nullspace(evals, F, len(mons))
        hilbert = len(mons) - len(kernel)
        if kernel:
            rows, pivots = row_echelon(kernel, F)
            for row, pc in zip(rows, pivots):
                lead = mons[pc]
                if any(all(a <= b for a, b in zip(l, lead)) for l in found_leads):
                    continue
                candidates.append(ring.from_dict({m: c for m, c in zip(mons, row) if c}))
            found_leads.extend(mons[pc] for pc in pivots)
        if hilbert == s and reached is None:
            reached = d
        if reached is not None and d >= reached + 1:
            break
    return Ideal(candidates, ring, limits=limits)
