"""Exact ground fields: the rationals and prime fields GF(p).

A field object carries the arithmetic; raw coefficient values are plain
``gmpy2.mpq`` (rationals) or ``int`` in ``[0, p)`` (prime fields) so the
polynomial kernel can work on them without wrapper overhead.
:class:`FieldElement` is the checked, user-facing scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Any

import gmpy2
from gmpy2 import mpq, mpz

MAX_MODULUS = 2**31


class FieldError(ValueError):
    """Bad field construction or mixed field contexts."""


class RationalField:
    """The field of rational numbers, with ``gmpy2.mpq`` values."""

    characteristic = 0
    name = "QQ"

    zero = mpq(0)
    one = mpq(1)

    def __call__(self, value: Any) -> mpq:
        return self.convert(value)

    def convert(self, value: Any) -> mpq:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} element into {self}")
            return value.value
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, float):
            raise TypeError("floating point coordinates are not exact; pass 'a/b' strings")
        if isinstance(value, str):
            text = value.strip()
            try:
                return mpq(text)
            except ValueError:
                raise ValueError(f"not a rational number: {value!r}") from None
        if isinstance(value, (Integral, Rational, type(mpz(0)), type(mpq(0)))):
            return mpq(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def to_str(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_fraction(self, a) -> Fraction:
        return Fraction(int(a.numerator), int(a.denominator))

    def descriptor(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field GF(p) for a prime ``p < 2**31``; values are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, Integral):
            raise FieldError(f"modulus must be an integer, got {p!r}")
        p = int(p)
        if p < 2 or p >= MAX_MODULUS or not gmpy2.is_prime(p):
            raise FieldError(f"modulus must be a prime below 2**31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value: Any) -> int:
        return self.convert(value)

    def convert(self, value: Any) -> int:
        p = self.p
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} element into {self}")
            return value.value
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, float):
            raise TypeError("floating point values are not field elements")
        if isinstance(value, str):
            value = RationalField().convert(value)
        if isinstance(value, Integral) or isinstance(value, type(mpz(0))):
            return int(value) % p
        if isinstance(value, (Rational, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        raise TypeError(f"cannot convert {type(value).__name__} to {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def to_str(self, a) -> str:
        return str(a)

    def descriptor(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc) -> RationalField | PrimeField:
    """Build a field from ``"Q"`` / ``"QQ"`` / ``{"Fp": p}`` / ``"GF(p)"`` / ``"Fp:p"``."""
    if isinstance(desc, (RationalField, PrimeField)):
        return desc
    if isinstance(desc, dict):
        if set(desc) != {"Fp"}:
            raise FieldError(f"unknown field descriptor {desc!r}")
        return PrimeField(desc["Fp"])
    if isinstance(desc, str):
        s = desc.strip()
        if s in ("Q", "QQ"):
            return QQ
        for prefix in ("GF(", "Fp(", "F("):
            if s.startswith(prefix) and s.endswith(")"):
                return PrimeField(_parse_modulus(s[len(prefix):-1]))
        for prefix in ("Fp:", "GF:", "Fp", "GF"):
            if s.startswith(prefix):
                return PrimeField(_parse_modulus(s[len(prefix):]))
    raise FieldError(f"unknown field descriptor {desc!r}")


def _parse_modulus(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise FieldError(f"bad modulus {text!r}") from None


@dataclass(frozen=True)
class FieldElement:
    """An exact scalar bound to its field.

    Arithmetic between elements of different fields (including different
    moduli) raises :class:`FieldError`; ints and Fractions are coerced.
    """

    field: Any
    value: Any

    @classmethod
    def of(cls, field, value) -> FieldElement:
        return cls(field, field.convert(value))

    def _other(self, other) -> Any:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.to_str(self.value)

    def __repr__(self):
        return f"FieldElement({self.field!r}, {self})"

    @property
    def numerator(self) -> int:
        if isinstance(self.field, PrimeField):
            return self.value
        return int(self.value.numerator)

    @property
    def denominator(self) -> int:
        if isinstance(self.field, PrimeField):
            return 1
        return int(self.value.denominator)
