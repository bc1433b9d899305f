import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffmirror.cones import (
    check_reflexive_pair,
    cone_from_json,
    cone_over_polytope,
    direct_sum,
    dual_cone,
    extreme_rays,
    gorenstein_degree,
    make_cone,
    orthant,
    slice_points,
    transform_cone,
)
from cliffmirror.linalg import pairing
from oracles import facets_by_subsets, polygon_slices, random_unimodular, reflexive_polygons_in_box

SQUARE = [(1, 1), (1, -1), (-1, -1), (-1, 1)]


def test_square_pair():
    pair = check_reflexive_pair(cone_over_polytope(SQUARE))
    assert pair.deg == (1, 0, 0) and pair.deg_dual == (1, 0, 0)
    assert pair.index == 1
    assert len(pair.slice_K1) == 9
    assert pair.slice_Kdual1 == ((1, -1, 0), (1, 0, -1), (1, 0, 0), (1, 0, 1), (1, 1, 0))
    assert set(pair.K_dual.rays) == {(1, 1, 0), (1, 0, 1), (1, -1, 0), (1, 0, -1)}


def test_gorenstein_degree():
    assert gorenstein_degree(make_cone([(1, 0), (1, 1)])) == (1, 0)
    assert gorenstein_degree(make_cone([(2, 1), (0, 1)])) == (0, 1)
    assert gorenstein_degree(make_cone([(2, 1), (1, 2)])) is None


def test_orthant_index():
    for n in range(1, 5):
        pair = check_reflexive_pair(orthant(n))
        assert pair.index == n
        assert pair.deg == pair.deg_dual == (1,) * n


def test_non_reflexive():
    assert check_reflexive_pair(make_cone([(2, 1), (1, 2)])) is None
    # Gorenstein, but no multiple of the doubled triangle is reflexive
    C = cone_over_polytope([(0, 0), (2, 0), (0, 2)])
    assert gorenstein_degree(C) == (1, 0, 0)
    assert check_reflexive_pair(C) is None


def test_rejects_degenerate_cones():
    with pytest.raises(ValueError):
        make_cone([(1, 0, 0), (0, 1, 0)])
    with pytest.raises(ValueError):
        make_cone([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(ValueError):
        cone_from_json({"rank": 3, "rays": [[1, 0]]})


def test_redundant_generators_dropped():
    C = make_cone([(1, 0), (0, 1), (1, 1), (2, 2)])
    assert C.rays == ((0, 1), (1, 0))


@pytest.mark.parametrize("verts", reflexive_polygons_in_box())
def test_slices_and_facets_against_oracles(verts):
    C = cone_over_polytope(verts)
    assert sorted(C.facets) == facets_by_subsets(C.rays)
    assert list(dual_cone(C).facets) == list(C.rays)
    pair = check_reflexive_pair(C)
    assert pair is not None
    for g in pair.K.rays:
        assert pairing(g, pair.deg_dual) == 1
    for g in pair.K_dual.rays:
        assert pairing(pair.deg, g) == 1
    if pair.deg == (1, 0, 0):
        K1, dual = polygon_slices(verts)
        assert list(pair.slice_K1) == K1
        assert list(pair.slice_Kdual1) == dual


def test_higher_slices():
    pair = check_reflexive_pair(cone_over_polytope(SQUARE))
    assert len(slice_points(pair, "K", 2)) == 25
    assert len(slice_points(pair, "dual", 2)) == 13


def test_direct_sum_square():
    p = check_reflexive_pair(cone_over_polytope(SQUARE))
    q = direct_sum(p, p)
    assert q.rank == 6 and q.index == 2
    assert len(q.slice_Kdual1) == 10 and len(q.slice_K1) == 18
    again = check_reflexive_pair(make_cone(q.K.rays))
    assert again.index == 2 and again.slice_Kdual1 == q.slice_Kdual1


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_unimodular_invariance(seed):
    import random

    rng = random.Random(seed)
    polys = reflexive_polygons_in_box()
    C = cone_over_polytope(rng.choice(polys))
    U = random_unimodular(3, rng)
    a, b = check_reflexive_pair(C), check_reflexive_pair(transform_cone(C, U))
    assert a.index == b.index
    assert len(a.slice_K1) == len(b.slice_K1)
    assert len(a.slice_Kdual1) == len(b.slice_Kdual1)


def test_extreme_rays_of_orthant():
    assert extreme_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_cone_json_roundtrip():
    C = cone_over_polytope(SQUARE)
    assert cone_from_json(C.to_json()) == C
