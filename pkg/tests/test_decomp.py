import pytest

from cliffmirror.cones import check_reflexive_pair, cone_over_polytope, direct_sum, orthant
from cliffmirror.decomp import (
    Decomposition,
    enumerate_decompositions,
    partition_of,
    product_decomposition,
    validate,
)
from oracles import brute_decompositions, random_pairs, reflexive_polygons_in_box

SQUARE = [(1, 1), (1, -1), (-1, -1), (-1, 1)]


@pytest.fixture(scope="module")
def square():
    return check_reflexive_pair(cone_over_polytope(SQUARE))


def test_square_census(square):
    ds = enumerate_decompositions(square)
    assert [d.to_json() for d in ds] == [
        {"r": 0, "s": [], "t": [[1, 0, 0]]},
        {"r": 1, "s": [[1, -1, 0], [1, 1, 0]], "t": []},
        {"r": 1, "s": [[1, 0, -1], [1, 0, 1]], "t": []},
    ]
    assert enumerate_decompositions(square, 1, 1) == ds[1:]


def test_bad_range(square):
    with pytest.raises(ValueError):
        enumerate_decompositions(square, 1, 0)
    with pytest.raises(ValueError):
        enumerate_decompositions(square, 0, 2)


def test_orthant_single():
    pair = check_reflexive_pair(orthant(4))
    ds = enumerate_decompositions(pair)
    assert len(ds) == 1 and ds[0].r == 0 and len(ds[0].t) == 4


def test_square_sum_census(square):
    pair = direct_sum(square, square)
    ds = enumerate_decompositions(pair)
    assert [sum(d.r == r for d in ds) for r in range(3)] == [1, 4, 4]
    for d1 in enumerate_decompositions(square):
        for d2 in enumerate_decompositions(square):
            assert product_decomposition(d1, d2) in ds


def _all_small_pairs():
    pairs = [check_reflexive_pair(cone_over_polytope(v)) for v in reflexive_polygons_in_box()]
    pairs += [check_reflexive_pair(orthant(n)) for n in range(1, 5)]
    pairs += random_pairs(20, seed=11)
    sq = check_reflexive_pair(cone_over_polytope(SQUARE))
    pairs.append(direct_sum(sq, sq))
    return [p for p in pairs if len(p.slice_Kdual1) <= 12]


def test_against_brute_force():
    for pair in _all_small_pairs():
        ours = enumerate_decompositions(pair)
        assert len(set(ours)) == len(ours)
        assert {(d.r, d.s, d.t) for d in ours} == brute_decompositions(pair)
        for d in ours:
            assert validate(pair, d).ok


def test_validate_rejects(square):
    bad = Decomposition(1, ((1, -1, 0), (1, 0, 1)), ())
    rep = validate(square, bad)
    assert not rep.sum_identity and not rep.ok
    off = Decomposition(0, (), ((2, 0, 0),))
    rep = validate(square, off)
    assert rep.off_level == ((2, 0, 0),) and not rep.in_slice


def test_partition_property(square):
    for d in enumerate_decompositions(square):
        for m in square.slice_K1:
            kind, i = partition_of(square, d, m)
            assert kind == ("t" if d.t else "s")


def test_partition_violation(square):
    d = Decomposition(1, ((1, -1, 0), (1, 1, 0)), ())
    with pytest.raises(ValueError):
        partition_of(square, d, (2, 0, 0))


def test_product_mismatch():
    a = Decomposition(0, (), ((1, 0),))
    b = Decomposition(0, (), ((1, 0, 0), (1, 0)))
    with pytest.raises(ValueError, match="factor mismatch"):
        product_decomposition(a, b)


def test_json_roundtrip(square):
    for d in enumerate_decompositions(square):
        assert Decomposition.from_json(d.to_json()) == d
