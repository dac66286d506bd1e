import random

import pytest

from nilfit.errors import (
    CapExceededError,
    DegeneratePointSetError,
    DuplicatePointError,
    EmptyInputError,
    NotGenericError,
)
from nilfit.fields import GF, QQ
from nilfit.fitting import (
    FatPointScheme,
    PointSet,
    check_generic,
    coatoms,
    dehomogenize,
    dual_arrangement,
    embed_affine,
    fat_point_nil,
    hyp_via_nil,
    local_power_identity,
    max_hyperplanes,
    min_distance,
    products_ideal,
    radical_of_products,
    verify_decomposition,
)
from nilfit.ideals import Ideal, contains_ideal, ideal_equal
from nilfit.oracle import hyp_bruteforce, random_generic_pointset
from nilfit.polynomial import PolyRing


def test_example_report(example_points):
    ps = embed_affine(example_points)
    report = hyp_via_nil(ps)
    assert report.to_dict() == {
        "k": 3,
        "n": 4,
        "hyp": 3,
        "nil": 2,
        "d": 1,
        "generic": True,
        "extension": False,
        "hyperplanes": [{"projective": "-x-2*y+z", "affine": "x+2*y=1", "witnesses": [1, 3, 4]}],
    }
    first = report.nil_result.chain[0]
    assert [str(g) for g in first.groebner()] == ["y+2*z", "x+z"]
    assert report.nil_result.is_ascending()


def test_example_arrangement(example_points):
    ps = embed_affine(example_points)
    A = dual_arrangement(ps)
    reference_forms = ["x+z", "x+y+z", "3*x-y+z", "-3*x+2*y+z"]
    for L, text in zip(A.forms, reference_forms):
        # same form up to a nonzero scalar
        assert ideal_equal(Ideal([L]), Ideal([A.ring.parse(text)]))
    I = products_ideal(A, 3)
    assert len(I.generators) == 4
    cts = coatoms(A)
    assert sorted(c.nu for c in cts) == [2, 2, 2, 3]
    J = radical_of_products(A, cts)
    assert contains_ideal(J, I)
    assert ideal_equal(J, radical_of_products(A, cts, method="intersect"))


def test_point_validation():
    with pytest.raises(EmptyInputError):
        embed_affine([])
    with pytest.raises(DuplicatePointError) as info:
        PointSet.from_projective([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert info.value.witness == [1, 2]
    with pytest.raises(DegeneratePointSetError):
        PointSet.from_projective([[0, 0, 0], [1, 0, 0]])
    with pytest.raises(DegeneratePointSetError):
        PointSet.from_projective([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    with pytest.raises(DegeneratePointSetError):
        PointSet.from_projective([[1, 0], [1, 0, 1]])
    with pytest.raises(TypeError):
        embed_affine([[0.5, 1], [1, 1], [2, 0]])


def test_non_generic_sets_are_refused():
    pts = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    ps = PointSet.from_projective(pts)
    gen = check_generic(ps)
    assert not gen and gen.witness == (1, 2, 3)
    with pytest.raises(NotGenericError) as info:
        hyp_via_nil(ps)
    assert info.value.witness == (1, 2, 3)


def test_caps():
    rng = random.Random(1)
    ps = random_generic_pointset(rng, 3, 8)
    with pytest.raises(CapExceededError):
        hyp_via_nil(ps, max_points=7)
    with pytest.raises(CapExceededError):
        hyp_via_nil(ps, max_generators=5)


def test_invariance_under_scaling_and_relabelling(example_points):
    ps = embed_affine(example_points)
    base = hyp_via_nil(ps)
    scaled = PointSet.from_projective(ps.scaled([2, -1, "1/3", 5]))
    assert hyp_via_nil(scaled).hyp == base.hyp
    perm = [3, 0, 2, 1]
    moved = PointSet.from_projective([ps.points[i] for i in perm], labels=[ps.labels[i] for i in perm])
    again = hyp_via_nil(moved)
    assert again.hyp == base.hyp
    assert [set(h.witnesses) for h in again.hyperplanes] == [set(h.witnesses) for h in base.hyperplanes]
    assert [h.projective for h in hyp_via_nil(ps, order="lex").hyperplanes] == ["-x-2*y+z"]


def test_several_maximal_lines():
    # two disjoint collinear triples: y = 0 and y = 1
    pts = [[0, 0], [1, 0], [2, 0], [0, 1], [3, 1], [5, 1]]
    report = hyp_via_nil(embed_affine(pts))
    assert report.hyp == 3 and report.nil == 2
    assert sorted(h.witnesses for h in report.hyperplanes) == [(1, 2, 3), (4, 5, 6)]
    assert sorted(h.affine for h in report.hyperplanes) == ["y=0", "y=1"]


def test_generic_position_gives_nil_one():
    pts = [[0, 0], [1, 0], [0, 1], [2, 3], [5, 7]]
    report = hyp_via_nil(embed_affine(pts))
    assert report.nil == 1 and report.hyp == 2
    assert len(report.hyperplanes) == 10


def test_line_at_infinity():
    ring = PolyRing.standard(3)
    assert dehomogenize([0, 0, 1], ring) == (None, True)
    assert dehomogenize([-1, -2, 1], ring) == ("x+2*y=1", False)
    ps = PointSet.from_projective([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]], affine=True)
    report = hyp_via_nil(ps)
    assert report.hyp == 3
    (h,) = report.hyperplanes
    assert h.at_infinity and h.affine is None and h.projective == "z"


def test_two_dimensional_extension():
    ps = PointSet.from_projective([[1, 0], [0, 1], [1, 1]])
    report = hyp_via_nil(ps)
    assert report.extension and report.hyp == 1 and report.nil == 1


def test_projective_four_space_planted():
    rng = random.Random(5)
    ps = random_generic_pointset(rng, 4, 7, planted=5)
    report = hyp_via_nil(ps)
    bf = hyp_bruteforce(ps)
    assert report.hyp == bf.hyp >= 5
    assert report.hyp == report.nil + 2
    assert sorted(h.witnesses for h in report.hyperplanes) == sorted(w for _, w in bf.hyperplanes)
    assert max_hyperplanes(ps) == list(report.hyperplanes)


def test_min_distance_codewords():
    F = GF(7)
    pts = [[1, 0, 1], [0, 1, 1], [1, 1, 1], [2, 2, 1], [3, 5, 1], [6, 1, 1]]
    ps = PointSet.from_projective(pts, F)
    md = min_distance(ps)
    report = hyp_via_nil(ps)
    assert md.d == ps.n - report.hyp
    for w in md.codewords:
        assert sum(1 for c in w if c) == md.d


def test_fat_points():
    Z = FatPointScheme.create([[1, 0, 0], [0, 1, 0], [1, 1, 1]], [2, 3, 1])
    res = fat_point_nil(Z)
    assert res.index == 3 and res.is_ascending()
    with pytest.raises(DuplicatePointError):
        FatPointScheme.create([[1, 0, 0], [2, 0, 0]], [1, 1])


def test_decomposition_certificate(example_points):
    cert = verify_decomposition(dual_arrangement(embed_affine(example_points)))
    assert cert.holds
    assert sorted(cert.exponents) == [1, 1, 1, 2]


@pytest.mark.parametrize("m,k", [(2, 3), (3, 3), (4, 3), (3, 4), (5, 4)])
def test_local_identity(m, k):
    ring = PolyRing.standard(k - 1)
    rng = random.Random(m * 10 + k)
    forms = []
    while len(forms) < m:
        f = ring.linear_form([rng.randint(-5, 5) for _ in range(k - 1)])
        if f and all(not ideal_equal(Ideal([f]), Ideal([g])) for g in forms):
            forms.append(f)
    try:
        res = local_power_identity(m, k, forms)
    except NotGenericError:
        pytest.skip("drawn forms not in general position")
    assert res.holds and res.exponent == m - k + 2
    assert res.code_distance == m - k + 2
