"""Division, S-polynomials and Buchberger's algorithm.

Internally a polynomial is a dict ``{code: coeff}`` keyed by packed
monomial codes (see :mod:`nilfit.monomials`), so the leading term is
``max(d)`` and multiplying by a monomial shifts every code by a constant.
Basis elements are kept monic, which makes one reduction step a single
pass over the reducer for both QQ and GF(p).
"""

from __future__ import annotations

import functools
import heapq
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence

from .fields import PrimeField
from .monomials import MonomialOrder
from .polynomial import Polynomial, PolyRing, RingMismatchError

DEFAULT_MAX_PAIRS = 10**6
DEFAULT_MAX_TERMS = 10**5


class ResourceLimitError(RuntimeError):
    """A configured cap (pairs, polynomial support, chain length...) was exceeded."""


# -- internal representation -----------------------------------------------------


def _common_ring(polys: Sequence[Polynomial], ring: PolyRing | None = None) -> PolyRing:
    for p in polys:
        if ring is None:
            ring = p.ring
        elif p.ring.variables != ring.variables or p.ring.field != ring.field:
            raise RingMismatchError(f"ring mismatch: {p.ring} vs {ring}")
    if ring is None:
        raise ValueError("cannot infer a ring from an empty generator list")
    return ring


def _encode(f: Polynomial, order: MonomialOrder) -> dict:
    enc = order.encode
    return {enc(m): c for m, c in f._d.items()}


def _decode(d: dict, ring: PolyRing) -> Polynomial:
    dec = ring.order.decode
    return Polynomial(ring, {dec(code): c for code, c in d.items()})


def _monic(d: dict, F) -> dict:
    lc = d[max(d)]
    if lc == 1:
        return d
    inv = F.inv(lc)
    if isinstance(F, PrimeField):
        p = F.p
        return {m: c * inv % p for m, c in d.items()}
    return {m: c * inv for m, c in d.items()}


def _sorted_terms(d: dict) -> list:
    return sorted(d.items(), reverse=True)


def _reduce(d: dict, basis: list, order: MonomialOrder, F, max_terms: int, stats: dict | None = None) -> dict:
    """Full reduction of ``d`` (consumed) by monic ``basis = [(lead, terms)]``."""
    divides = order.code_divides
    rem = {}
    steps = 0
    if isinstance(F, PrimeField):
        p = F.p
        while d:
            m = max(d)
            for lead, g in basis:
                if divides(lead, m):
                    break
            else:
                rem[m] = d.pop(m)
                continue
            c = d[m]
            shift = m - lead
            get = d.get
            for gc, gv in g:
                k = gc + shift
                v = (get(k, 0) - c * gv) % p
                if v:
                    d[k] = v
                else:
                    d.pop(k, None)
            steps += 1
            if len(d) > max_terms:
                raise ResourceLimitError(f"polynomial support exceeded {max_terms} terms")
    else:
        while d:
            m = max(d)
            for lead, g in basis:
                if divides(lead, m):
                    break
            else:
                rem[m] = d.pop(m)
                continue
            c = d[m]
            shift = m - lead
            get = d.get
            for gc, gv in g:
                k = gc + shift
                v = get(k, 0) - c * gv
                if v:
                    d[k] = v
                else:
                    d.pop(k, None)
            steps += 1
            if len(d) > max_terms:
                raise ResourceLimitError(f"polynomial support exceeded {max_terms} terms")
    if stats is not None:
        stats["reduction_steps"] = stats.get("reduction_steps", 0) + steps
    return rem


# -- public division API -----------------------------------------------------------


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None, *, check: bool = True):
    """Multivariate division of ``f`` by ``G``.

    Returns ``(remainder, quotients)`` with ``f = sum(q_i * g_i) + remainder``
    and no term of the remainder divisible by a leading term of ``G``.
    Divisors are tried in the given order. With ``check`` the identity is
    verified by reconstruction before returning.
    """
    G = list(G)
    ring = _common_ring([f, *G])
    order = order or f.ring.order
    if order.nvars != ring.nvars:
        raise RingMismatchError("order does not match the ring")
    if not G or any(not g for g in G):
        raise ValueError("divisors must be a nonempty list of nonzero polynomials")
    F = ring.field
    oring = ring if ring.order == order else ring.with_order(order)
    divides = order.code_divides
    divisors = []
    for g in G:
        gd = _encode(g, order)
        lead = max(gd)
        divisors.append((lead, gd[lead], sorted(gd.items(), reverse=True)))
    d = _encode(f, order)
    quotients = [dict() for _ in G]
    rem = {}
    while d:
        m = max(d)
        for i, (lead, lc, g) in enumerate(divisors):
            if divides(lead, m):
                break
        else:
            rem[m] = d.pop(m)
            continue
        c = F.div(d[m], lc)
        shift = m - lead
        qcode = order.code_div(m, lead)
        quotients[i][qcode] = F.add(quotients[i].get(qcode, F.zero), c)
        for gc, gv in g:
            k = gc + shift
            v = F.sub(d.get(k, F.zero), F.mul(c, gv))
            if v:
                d[k] = v
            else:
                d.pop(k, None)
    r = _decode(rem, oring)
    qs = [_decode({m: c for m, c in q.items() if c}, oring) for q in quotients]
    if check:
        total = r
        for q, g in zip(qs, G):
            total = total + q * g.change_ring(oring)
        if total != f.change_ring(oring):
            raise AssertionError("division identity failed to reconstruct the dividend")
    return r, qs


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """``(lcm/lt(f))*f - (lcm/lt(g))*g`` for the lcm of the leading monomials."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    ring = _common_ring([f, g])
    order = order or f.ring.order
    oring = ring if ring.order == order else ring.with_order(order)
    F = ring.field
    fd, gd = _encode(f, order), _encode(g, order)
    lf, lg = max(fd), max(gd)
    lcm = order.code_lcm(lf, lg)
    cf, cg = F.inv(fd[lf]), F.inv(gd[lg])
    out: dict = {}
    for d, lead, c, sign in ((fd, lf, cf, 1), (gd, lg, cg, -1)):
        shift = lcm - lead
        for code, v in d.items():
            k = code + shift
            t = F.mul(v, c)
            out[k] = F.add(out.get(k, F.zero), t) if sign > 0 else F.sub(out.get(k, F.zero), t)
    return _decode({k: v for k, v in out.items() if v}, oring)


# -- Buchberger --------------------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, sorted by increasing leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    elements: tuple
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and self.ring.variables == other.ring.variables and (
            self.ring.field == other.ring.field and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.order, self.elements))

    @property
    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    @property
    def leading_monomials(self) -> list:
        return [g.leading_monomial for g in self.elements]

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of ``f`` modulo the basis (unique for a Groebner basis)."""
        if not self.elements:
            return f.change_ring(self.ring)
        _common_ring([f], self.ring)
        rem = _reduce(_encode(f, self.order), self._encoded, self.order, self.ring.field, DEFAULT_MAX_TERMS * 10)
        return _decode(rem, self.ring)

    @functools.cached_property
    def _encoded(self) -> list:
        return [(max(d), sorted(d.items(), reverse=True)) for d in (_encode(g, self.order) for g in self.elements)]

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.elements) + "]"


def _lcm_code(order: MonomialOrder, a: int, b: int) -> int:
    return order.code_lcm(a, b)


def buchberger(
    gens: Iterable[Polynomial],
    order: MonomialOrder | None = None,
    *,
    ring: PolyRing | None = None,
    chain: bool = True,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``<gens>``.

    Pairs are selected by the normal strategy (smallest lcm under the
    order). Pairs whose leading monomials are coprime are skipped; with
    ``chain`` the Gebauer-Moeller chain criteria also prune pairs.
    Exceeding ``max_pairs`` reduced pairs or ``max_terms`` terms in one
    polynomial raises :class:`ResourceLimitError`.
    """
    gens = [g for g in gens]
    ring = _common_ring(gens, ring)
    order = order or ring.order
    if order.nvars != ring.nvars:
        raise RingMismatchError("order does not match the ring")
    oring = ring if ring.order == order else ring.with_order(order)
    F = ring.field
    stats = {"pairs_considered": 0, "pairs_reduced": 0, "zero_reductions": 0, "reduction_steps": 0}

    polys: List[list] = []  # sorted term lists
    leads: List[int] = []
    active: List[bool] = []
    pairs: list = []  # heap of (lcm, i, j)

    def reducers():
        return [(leads[i], polys[i]) for i in range(len(polys)) if active[i]]

    def add(h: dict):
        hd = _monic(h, F)
        lh = max(hd)
        idx = len(polys)
        polys.append(_sorted_terms(hd))
        leads.append(lh)
        active.append(True)
        lcm = order.code_lcm
        divides = order.code_divides
        mulc = order.code_mul
        cands = [i for i in range(idx) if active[i]]
        new = []
        if chain:
            lcms = {i: lcm(leads[i], lh) for i in cands}
            kept = []
            for pos, i in enumerate(cands):
                li = lcms[i]
                if li == mulc(leads[i], lh):
                    kept.append(i)
                    continue
                # drop (i, h) if another candidate's lcm properly divides it, or an equal lcm
                # appears earlier (or is coprime, which then kills the whole class)
                redundant = False
                for j in cands:
                    if j == i:
                        continue
                    lj = lcms[j]
                    if lj == li:
                        if lj == mulc(leads[j], lh) or j < i:
                            redundant = True
                            break
                    elif divides(lj, li):
                        redundant = True
                        break
                if not redundant:
                    kept.append(i)
            new = [i for i in kept if lcms[i] != mulc(leads[i], lh)]
            # old pairs made superfluous by h
            survivors = []
            for item in pairs:
                l, i, j = item
                if divides(lh, l) and lcm(leads[i], lh) != l and lcm(leads[j], lh) != l:
                    continue
                survivors.append(item)
            if len(survivors) != len(pairs):
                pairs[:] = survivors
                heapq.heapify(pairs)
            for i in new:
                heapq.heappush(pairs, (lcms[i], i, idx))
        else:
            for i in cands:
                li = lcm(leads[i], lh)
                if li != mulc(leads[i], lh):
                    heapq.heappush(pairs, (li, i, idx))
        for i in cands:
            if divides(lh, leads[i]):
                active[i] = False

    for g in gens:
        d = _encode(g, order)
        if not d:
            continue
        r = _reduce(d, reducers(), order, F, max_terms, stats)
        if r:
            add(r)
            if len(r) == 1 and max(r) == order.one:
                break

    while pairs:
        lcm, i, j = heapq.heappop(pairs)
        stats["pairs_considered"] += 1
        if stats["pairs_reduced"] >= max_pairs:
            raise ResourceLimitError(f"Buchberger exceeded {max_pairs} pairs")
        stats["pairs_reduced"] += 1
        si = lcm - leads[i]
        sj = lcm - leads[j]
        s: dict = {}
        if isinstance(F, PrimeField):
            p = F.p
            for c, v in polys[i]:
                s[c + si] = v
            for c, v in polys[j]:
                k = c + sj
                w = (s.get(k, 0) - v) % p
                if w:
                    s[k] = w
                else:
                    s.pop(k, None)
        else:
            for c, v in polys[i]:
                s[c + si] = v
            for c, v in polys[j]:
                k = c + sj
                w = s.get(k, 0) - v
                if w:
                    s[k] = w
                else:
                    s.pop(k, None)
        if not s:
            stats["zero_reductions"] += 1
            continue
        r = _reduce(s, reducers(), order, F, max_terms, stats)
        if not r:
            stats["zero_reductions"] += 1
            continue
        add(r)
        if len(r) == 1 and max(r) == order.one:
            break

    elements = _interreduce([(leads[i], polys[i]) for i in range(len(polys)) if active[i]], order, F, max_terms)
    stats["basis_size"] = len(elements)
    return GroebnerBasis(oring, order, tuple(_decode(dict(g), oring) for _, g in elements), stats)


def _interreduce(basis: list, order: MonomialOrder, F, max_terms: int) -> list:
    """Minimal, then reduced basis from a Groebner basis; sorted by increasing lead."""
    basis = sorted(basis)
    if basis and basis[0][0] == order.one:
        return [(order.one, [(order.one, F.one)])]
    divides = order.code_divides
    minimal = []
    for lead, g in basis:
        if not any(divides(l2, lead) for l2, _ in minimal):
            minimal.append((lead, g))
    out = []
    for idx, (lead, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = dict(g[1:])
        red = _reduce(tail, others, order, F, max_terms)
        red[lead] = g[0][1]
        out.append((lead, _sorted_terms(red)))
    return out


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero modulo ``G``."""
    G = [g for g in G if g]
    if not G:
        return True
    order = order or G[0].ring.order
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            s = s_polynomial(G[a], G[b], order)
            if s and normal_form(s, G, order, check=False)[0]:
                return False
    return True


def is_reduced(G: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """Monic, and no term of any element divisible by another element's leading term."""
    if not G:
        return True
    order = order or G[0].ring.order
    enc = [_encode(g, order) for g in G]
    leads = [max(d) for d in enc]
    for i, d in enumerate(enc):
        if d[leads[i]] != 1:
            return False
        for j, l in enumerate(leads):
            if i != j and any(order.code_divides(l, m) for m in d):
                return False
    return True
