from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from g2chow.matroid import Rank2Matroid, enumerate_admissible, hypersimplex, polytope_of
from g2chow.polytope import extreme_rays, hull, interiors_intersect, is_face_to_face, vertices_from_h
from oracles import brute_force_facets, eulerian


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_hypersimplex_volume_is_eulerian(n):
    # normalized volume of the second hypersimplex is the Eulerian number A(n-1, 1)
    assert hypersimplex(n).volume == eulerian(n - 1, 1) == 2 ** (n - 1) - n


@pytest.mark.parametrize("n", [4, 5])
def test_facets_match_brute_force(n):
    for m in enumerate_admissible(n):
        p = polytope_of(m)
        assert set(p.facets) == brute_force_facets(p.vertices), m.label


def _float_volume(p):
    # lattice of {sum x = 2} in Z^n: drop the last coordinate (unimodular projection)
    pts = [[float(x) for x in v[:-1]] for v in p.vertices]
    d = len(pts[0])
    from math import factorial

    return ConvexHull(pts).volume * factorial(d)


def test_volumes_match_scipy_hull_n5():
    # normalized volumes of lattice polytopes are integers, so rounding the float value is exact here
    for m in enumerate_admissible(5):
        p = polytope_of(m)
        v = _float_volume(p)
        assert p.volume == round(v) and abs(v - round(v)) < 1e-6


def test_extreme_rays_of_orthant_and_simplex_cone():
    rays = extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    # cone over a square: x3 >= |x1|, x3 >= |x2|
    rays = extreme_rays([[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]])
    assert sorted(rays) == sorted(product((-1, 1), (-1, 1), (1,)))


cube_pts = st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=5, max_size=10)


@settings(max_examples=40, deadline=None)
@given(cube_pts)
def test_hull_vertices_match_scipy(pts):
    pts = sorted(pts)
    try:
        ref = ConvexHull([list(p) for p in pts])
    except Exception:
        return  # degenerate input, qhull refuses
    p = hull([(x, y, z, 6 - x - y - z) for x, y, z in pts])
    assert {v[:3] for v in p.vertices} == {pts[i] for i in ref.vertices}
    assert p.volume == round(ref.volume * 6)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(enumerate_admissible(5)), st.lists(st.fractions(0, 1, max_denominator=6), min_size=4, max_size=4))
def test_contains_agrees_with_vertex_enumeration(m, xs):
    p = polytope_of(m)
    x = tuple(xs) + (2 - sum(xs),)
    # the H-description and the V-description must agree: x is in p iff adding
    # the equations x_i = const keeps the polytope nonempty at x
    inside = p.contains(x)
    eqs = list(p.equations) + [(tuple(int(i == j) for j in range(5)), x[i]) for i in range(4)]
    assert inside == bool(vertices_from_h(p.facets, eqs, 5))


def test_vertices_from_h_roundtrip():
    for m in enumerate_admissible(5):
        p = polytope_of(m)
        assert set(vertices_from_h(p.facets, p.equations, 5)) == set(p.vertices)


def test_interior_intersection_and_faces_n4():
    ms = enumerate_admissible(4)
    delta = hypersimplex(4)
    pyr = [m for m in ms if m.k == 3]
    assert len(pyr) == 6
    for a, b in combinations(pyr, 2):
        pa, pb = polytope_of(a), polytope_of(b)
        complementary = pa.volume + pb.volume == delta.volume and not interiors_intersect(pa, pb)
        if complementary:
            assert is_face_to_face(pa, pb)
    for a in pyr:
        assert interiors_intersect(polytope_of(a), delta)


def test_full_dim_pyramid_volume():
    p = polytope_of(Rank2Matroid.make(4, [[1, 2], [3], [4]]))
    assert len(p.vertices) == 5 and p.volume == 2
    assert p.contains((Fraction(1, 2),) * 4) and not p.contains((Fraction(1, 2),) * 4, strict=True)
