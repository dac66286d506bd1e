from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from nilfit.fields import GF, QQ, FieldElement, FieldError, PrimeField, field_from_descriptor

PRIMES = [2, 3, 5, 7, 101, 2**31 - 1]


def test_rational_conversion():
    assert QQ.convert(3) == 3
    assert QQ.convert("-3/6") == mpq(-1, 2)
    assert QQ.convert(Fraction(5, 10)) == mpq(1, 2)
    assert QQ.to_str(mpq(-3, 4)) == "-3/4"
    assert QQ.to_str(mpq(4, 2)) == "2"


@pytest.mark.parametrize("bad", [1.5, True, None, "x", [1]])
def test_rational_rejects(bad):
    with pytest.raises((TypeError, ValueError)):
        QQ.convert(bad)


def test_prime_field_checks_modulus():
    for p in (0, 1, 4, 6, 2**31):
        with pytest.raises(FieldError):
            PrimeField(p)
    assert GF(7).convert(-1) == 6
    assert GF(7).convert("1/3") == 5
    with pytest.raises(ZeroDivisionError):
        GF(7).convert("1/7")
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)


def test_descriptors():
    assert field_from_descriptor("Q") is QQ
    assert field_from_descriptor("QQ") is QQ
    assert field_from_descriptor({"Fp": 5}) == GF(5)
    assert field_from_descriptor("GF(7)") == GF(7)
    assert field_from_descriptor("Fp:11") == GF(11)
    assert GF(13).descriptor() == {"Fp": 13}
    for bad in ("R", {"p": 3}, "GF(x)"):
        with pytest.raises(FieldError):
            field_from_descriptor(bad)


def test_mixed_fields_refused():
    a = FieldElement.of(GF(5), 2)
    b = FieldElement.of(GF(7), 2)
    with pytest.raises(FieldError):
        a + b
    with pytest.raises(FieldError):
        FieldElement.of(QQ, 1) * a
    assert (a * 3).value == 1
    assert (1 / a).value == 3


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_field_axioms(a, b, c):
    x, y, z = (FieldElement.of(QQ, v) for v in (a, b, c))
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == FieldElement.of(QQ, 0)
    if b:
        assert (x / y) * y == x


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = (FieldElement.of(F, v) for v in (a, b, c))
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    assert (x + (-x)).value == 0
    if y.value:
        assert (x / y) * y == x
        assert (y * y.inverse()).value == 1
