"""Monomials and monomial orders.

A monomial is a tuple of non-negative exponents. Every order packs a
monomial into a single Python int (its *code*) such that integer
comparison of codes is the order comparison. Codes are affine in the
exponent vector, so multiplication and division are a single addition or
subtraction of codes; divisibility uses guard bits on the exponent fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

Monomial = Tuple[int, ...]

FIELD_BITS = 20
_MAXVAL = (1 << (FIELD_BITS - 1)) - 1  # also the complement constant
MAX_EXPONENT = _MAXVAL

ORDER_KINDS = ("lex", "grevlex", "elimination", "graded_elimination")


def monomial_degree(a: Monomial) -> int:
    return sum(a)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    if not monomial_divides(a, b):
        raise ValueError(f"{a} does not divide {b}")
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _grevlex_segments(variables):
    # (deg of the block, then complemented exponents from the last variable)
    segs = [("deg", tuple(variables))]
    segs += [("comp", i) for i in reversed(variables)]
    return segs


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``nvars`` variables, ``x_1 > x_2 > ... > x_k``.

    kinds:
      * ``lex`` -- lexicographic.
      * ``grevlex`` -- graded reverse lexicographic (the default).
      * ``elimination`` -- block order: the first ``block`` variables
        compared by grevlex first, ties broken by grevlex on the rest.
        Any monomial containing a first-block variable beats every
        monomial free of them.
      * ``graded_elimination`` -- degree in the last ``nvars - block``
        variables first, then the ``elimination`` comparison. Eliminates
        the first block only for ideals homogeneous in the remaining
        variables (the eliminated variables having degree 0), where it
        keeps Buchberger degree-by-degree.
    """

    kind: str
    nvars: int
    block: int = 0
    _coeffs: tuple = field(init=False, repr=False, compare=False, hash=False)
    _offset: int = field(init=False, repr=False, compare=False, hash=False)
    _comp_mask: int = field(init=False, repr=False, compare=False, hash=False)
    _var_mask: int = field(init=False, repr=False, compare=False, hash=False)
    _guard: int = field(init=False, repr=False, compare=False, hash=False)
    _shifts: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        k, b = self.nvars, self.block
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if k < 1:
            raise ValueError("a monomial order needs at least one variable")
        if self.kind in ("elimination", "graded_elimination"):
            if not 0 < b < k:
                raise ValueError(f"elimination block must satisfy 0 < block < nvars, got {b}")
        elif b:
            raise ValueError(f"{self.kind} takes no block size")

        first, rest = list(range(b)), list(range(b, k))
        if self.kind == "lex":
            segs = [("plain", i) for i in range(k)]
        elif self.kind == "grevlex":
            segs = _grevlex_segments(range(k))
        elif self.kind == "elimination":
            segs = _grevlex_segments(first) + _grevlex_segments(rest)
        else:
            segs = [("deg", tuple(rest))] + _grevlex_segments(first) + _grevlex_segments(rest)[1:]

        coeffs = [0] * k
        offset = comp_mask = var_mask = guard = 0
        shifts = [0] * k
        for pos, (tag, what) in enumerate(reversed(segs)):
            shift = pos * FIELD_BITS
            if tag == "deg":
                for i in what:
                    coeffs[i] += 1 << shift
                continue
            shifts[what] = shift
            var_mask |= ((1 << FIELD_BITS) - 1) << shift
            guard |= 1 << (shift + FIELD_BITS - 1)
            if tag == "plain":
                coeffs[what] += 1 << shift
            else:
                coeffs[what] -= 1 << shift
                offset |= _MAXVAL << shift
                comp_mask |= _MAXVAL << shift
        object.__setattr__(self, "_coeffs", tuple(coeffs))
        object.__setattr__(self, "_offset", offset)
        object.__setattr__(self, "_comp_mask", comp_mask)
        object.__setattr__(self, "_var_mask", var_mask)
        object.__setattr__(self, "_guard", guard)
        object.__setattr__(self, "_shifts", tuple(shifts))

    @classmethod
    def lex(cls, nvars: int) -> MonomialOrder:
        return cls("lex", nvars)

    @classmethod
    def grevlex(cls, nvars: int) -> MonomialOrder:
        return cls("grevlex", nvars)

    @classmethod
    def elimination(cls, nvars: int, block: int) -> MonomialOrder:
        return cls("elimination", nvars, block)

    @classmethod
    def graded_elimination(cls, nvars: int, block: int) -> MonomialOrder:
        return cls("graded_elimination", nvars, block)

    @classmethod
    def from_name(cls, name: str, nvars: int) -> MonomialOrder:
        name = name.strip().lower()
        if name in ("grevlex", "degrevlex", "drl"):
            return cls.grevlex(nvars)
        if name == "lex":
            return cls.lex(nvars)
        for kind in ("graded_elimination", "elimination"):
            if name.startswith(kind + "(") and name.endswith(")"):
                return cls(kind, nvars, int(name[len(kind) + 1:-1]))
        raise ValueError(f"unknown monomial order {name!r}")

    @property
    def name(self) -> str:
        if self.block:
            return f"{self.kind}({self.block})"
        return self.kind

    # -- packed codes -----------------------------------------------------

    def encode(self, a: Sequence[int]) -> int:
        if len(a) != self.nvars:
            raise ValueError(f"monomial {tuple(a)} has {len(a)} exponents, expected {self.nvars}")
        code = self._offset
        for e, c in zip(a, self._coeffs):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            code += e * c
        return code

    def decode(self, code: int) -> Monomial:
        plain = (code ^ self._comp_mask) & self._var_mask
        m = (1 << FIELD_BITS) - 1
        return tuple((plain >> s) & m for s in self._shifts)

    @property
    def one(self) -> int:
        """Code of the monomial 1."""
        return self._offset

    def code_mul(self, a: int, b: int) -> int:
        return a + b - self._offset

    def code_div(self, b: int, a: int) -> int:
        return b - a + self._offset

    def code_divides(self, a: int, b: int) -> bool:
        cm, vm, g = self._comp_mask, self._var_mask, self._guard
        return (((((b ^ cm) & vm) | g) - ((a ^ cm) & vm)) & g) == g

    def code_lcm(self, a: int, b: int) -> int:
        return self.encode(monomial_lcm(self.decode(a), self.decode(b)))

    def code_coprime(self, a: int, b: int) -> bool:
        return self.code_lcm(a, b) == self.code_mul(a, b)

    # -- exponent-tuple interface ------------------------------------------

    def key(self, a: Sequence[int]) -> int:
        return self.encode(a)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
        if len(a) != len(b):
            raise ValueError("monomials of different lengths")
        ka, kb = self.encode(a), self.encode(b)
        return (ka > kb) - (ka < kb)
