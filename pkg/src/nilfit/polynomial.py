"""Multivariate polynomials over an exact field, with a text parser and printer.

>>> R = PolyRing.standard(3)
>>> f = R.parse("(x+z)*(x+y+z)")
>>> str(f)
'x^2+x*y+2*x*z+y*z+z^2'
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Sequence

from .fields import QQ, FieldElement
from .monomials import Monomial, MonomialOrder, monomial_divides, monomial_mul


class RingMismatchError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    """Raised by :func:`parse_polynomial`; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def default_variable_names(k: int) -> tuple:
    if k <= 3:
        return ("x", "y", "z")[:k]
    return tuple(f"x{i}" for i in range(1, k + 1))


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """``K[x_1, ..., x_k]`` with a fixed monomial order used for term sorting."""

    __slots__ = ("variables", "field", "order", "_index")

    def __init__(self, variables: Sequence[str], field=QQ, order: MonomialOrder | str | None = None):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        for v in variables:
            if not _IDENT.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names in {variables}")
        if order is None:
            order = MonomialOrder.grevlex(len(variables))
        elif isinstance(order, str):
            order = MonomialOrder.from_name(order, len(variables))
        if order.nvars != len(variables):
            raise ValueError("order and ring have different numbers of variables")
        self.variables = variables
        self.field = field
        self.order = order
        self._index = {v: i for i, v in enumerate(variables)}

    @classmethod
    def standard(cls, k: int, field=QQ, order=None) -> PolyRing:
        return cls(default_variable_names(k), field, order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def with_order(self, order: MonomialOrder | str) -> PolyRing:
        return PolyRing(self.variables, self.field, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.field}; {self.order.name})"

    # -- constructors -----------------------------------------------------

    def from_dict(self, terms: Mapping[Monomial, object]) -> Polynomial:
        conv = self.field.convert
        return Polynomial(self, {tuple(m): c for m, c in ((m, conv(c)) for m, c in terms.items()) if c})

    def _raw(self, terms: Dict[Monomial, object]) -> Polynomial:
        return Polynomial(self, terms)

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exponents: Sequence[int], coeff=1) -> Polynomial:
        exponents = tuple(exponents)
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise ValueError(f"bad exponent vector {exponents}")
        c = self.field.convert(coeff)
        return Polynomial(self, {exponents: c} if c else {})

    def gen(self, i: int) -> Polynomial:
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def linear_form(self, coeffs: Sequence) -> Polynomial:
        if len(coeffs) != self.nvars:
            raise ValueError(f"expected {self.nvars} coefficients, got {len(coeffs)}")
        conv = self.field.convert
        terms = {}
        for i, c in enumerate(coeffs):
            c = conv(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)


class Polynomial:
    """An immutable polynomial; terms are kept sorted descending under the ring order."""

    __slots__ = ("ring", "_d", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        # ``terms`` must already hold converted, nonzero coefficients.
        self.ring = ring
        self._d = terms
        self._sorted = None
        self._hash = None

    # -- accessors ----------------------------------------------------------

    @property
    def terms(self) -> tuple:
        """``((monomial, coeff), ...)`` strictly descending; coeffs are raw field values."""
        if self._sorted is None:
            key = self.ring.order.encode
            self._sorted = tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._d)

    def coefficient(self, monomial: Sequence[int]) -> FieldElement:
        return FieldElement(self.ring.field, self._d.get(tuple(monomial), self.ring.field.zero))

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    @property
    def is_zero(self) -> bool:
        return not self._d

    @property
    def leading_monomial(self) -> Monomial:
        if not self._d:
            raise ValueError("the zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def leading_coefficient(self):
        if not self._d:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._d)

    def monic(self) -> Polynomial:
        if not self._d:
            return self
        F = self.ring.field
        inv = F.inv(self.leading_coefficient)
        return Polynomial(self.ring, {m: F.mul(c, inv) for m, c in self._d.items()})

    def evaluate(self, point: Sequence) -> FieldElement:
        F = self.ring.field
        vals = [F.convert(v) for v in point]
        if len(vals) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = F.zero
        for m, c in self._d.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = F.mul(t, v**e)
            total = F.add(total, t)
        return FieldElement(F, total)

    def change_ring(self, ring: PolyRing) -> Polynomial:
        """Reinterpret in a ring with the same variables and field (e.g. another order)."""
        if ring.variables != self.ring.variables or ring.field != self.ring.field:
            raise RingMismatchError(f"cannot move {self.ring} polynomial into {ring}")
        return Polynomial(ring, self._d)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, FieldElement) or not isinstance(other, (str, float)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine a polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        d = dict(self._d)
        for m, c in other._d.items():
            s = F.add(d.get(m, F.zero), c)
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.ring.field
        add, mul, zero = F.add, F.mul, F.zero
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = add(d.get(m, zero), mul(c1, c2))
        return Polynomial(self.ring, {m: c for m, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, monomial: Sequence[int], coeff) -> Polynomial:
        F = self.ring.field
        c = F.convert(coeff)
        if not c:
            return self.ring.zero
        return Polynomial(
            self.ring, {monomial_mul(m, monomial): F.mul(a, c) for m, a in self._d.items()}
        )

    def scale(self, coeff) -> Polynomial:
        return self.mul_term((0,) * self.ring.nvars, coeff)

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Quotient of an exact division; raises if ``other`` does not divide ``self``."""
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        lm, lc = other.leading_monomial, other.leading_coefficient
        rem, quo = self, {}
        while rem:
            m, c = rem.terms[0]
            if not monomial_divides(lm, m):
                raise ValueError("division is not exact")
            qm = tuple(a - b for a, b in zip(m, lm))
            qc = F.div(c, lc)
            quo[qm] = qc
            rem = rem - other.mul_term(qm, qc)
        return Polynomial(self.ring, quo)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        try:
            return self == self._check(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# -- printing -----------------------------------------------------------------


def _monomial_str(ring: PolyRing, m: Monomial) -> str:
    parts = []
    for v, e in zip(ring.variables, m):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical ASCII form, e.g. ``-x-2*y+z``; parse is its inverse."""
    if not f:
        return "0"
    F = f.ring.field
    out = []
    for i, (m, c) in enumerate(f.terms):
        text = F.to_str(c)
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        mono = _monomial_str(f.ring, m)
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif ident is not None:
            tokens.append(("var", ident, start))
        else:
            if op not in "+-*^/()":
                raise PolynomialSyntaxError(f"unexpected character {op!r}", text, start)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(msg, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok[:2] != ("op", op):
            self.fail(f"expected {op!r}", tok)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                g = self.term()
                f = f + g if tok[1] == "+" else f - g
            else:
                return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a non-negative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.fail("denominator must be an integer literal", den)
                if int(den[1]) == 0:
                    self.fail("zero denominator", den)
                return self.ring.constant(f"{val}/{den[1]}")
            return self.ring.constant(int(val))
        if kind == "var":
            if val not in self.ring._index:
                self.fail(f"unknown variable {val!r}", tok)
            return self.ring.gen(self.ring._index[val])
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect_op(")")
            return f
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {val!r}", tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse integers, ``a/b`` rationals, variables, ``+ - * ^`` and parentheses."""
    return _Parser(text, ring).parse()


def linear_coefficients(f: Polynomial) -> tuple:
    """Coefficient vector of a linear form (raw field values)."""
    k = f.ring.nvars
    F = f.ring.field
    out = [F.zero] * k
    for m, c in f._d.items():
        if sum(m) != 1:
            raise ValueError(f"{f} is not a linear form")
        out[m.index(1)] = c
    return tuple(out)


def product(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    result = ring.one
    for p in polys:
        result = result * p
    return result
