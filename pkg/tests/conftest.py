"""Shared fixtures and suite-wide checks.

Every ``normal_form`` call made anywhere in the suite is re-verified:
``f == sum(q_i * g_i) + r`` and no term of ``r`` is divisible by a leading
monomial of the divisors. Every ``nil_index`` result has its colon chain
checked for ascent, starting from the ideal itself.
"""

import functools
import random

import pytest

import nilfit
import nilfit.cli
import nilfit.fitting
import nilfit.groebner as groebner
import nilfit.ideals as ideals
from nilfit.monomials import monomial_divides as divides

_original = groebner.normal_form


@functools.wraps(_original)
def _checked_normal_form(f, G, order=None, *, check=True):
    r, qs = _original(f, G, order, check=False)
    G = list(G)
    ring = r.ring
    total = r
    for q, g in zip(qs, G):
        total = total + q * g.change_ring(ring)
    assert total == f.change_ring(ring), "division identity failed"
    leads = [g.change_ring(ring).leading_monomial for g in G]
    for m, _ in r.terms:
        assert not any(divides(l, m) for l in leads), "remainder not reduced"
    _checked_normal_form.calls += 1
    return r, qs


_checked_normal_form.calls = 0


_original_nil = ideals.nil_index


@functools.wraps(_original_nil)
def _checked_nil_index(I, J, cap=ideals.DEFAULT_NIL_CAP):
    res = _original_nil(I, J, cap)
    assert ideals.contains_ideal(res.chain[0], I), "I is not inside I : J"
    assert res.is_ascending(), "colon chain is not ascending"
    assert len(res.chain) == res.index
    _checked_nil_index.calls += 1
    return res


_checked_nil_index.calls = 0

_PATCHES = [
    (groebner, "normal_form", _checked_normal_form),
    (nilfit, "normal_form", _checked_normal_form),
    (ideals, "nil_index", _checked_nil_index),
    (nilfit, "nil_index", _checked_nil_index),
    (nilfit.fitting, "nil_index", _checked_nil_index),
    (nilfit.cli, "nil_index", _checked_nil_index),
]
_saved = []


def pytest_configure(config):
    for mod, name, fn in _PATCHES:
        _saved.append((mod, name, getattr(mod, name)))
        setattr(mod, name, fn)


def pytest_unconfigure(config):
    for mod, name, fn in reversed(_saved):
        setattr(mod, name, fn)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def example_points():
    return [(1, 0), (1, 1), (3, -1), (-3, 2)]
