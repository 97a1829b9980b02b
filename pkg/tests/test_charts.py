import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from g2chow.charts import (
    ChartPoint,
    Collapses,
    Defined,
    Undefined,
    all_charts,
    as_matrix,
    boundary_points,
    check_case_bullets,
    classify_extension,
    compose_check,
    expected_rank,
    formula_ij,
    jacobian,
    jacobian_rank_at,
    lift,
    pattern_point,
    plucker_to_params,
    random_interior_point,
    random_main_matrix,
    realize,
    transition,
)
from g2chow.errors import InvalidProjective, LiftUndefined, NotBoundary
from g2chow.exact import ONE, ProjPair, proj_normalize
from oracles import chart_coords_from_matrix, rank_mod_p, sympy_jacobian_rank

P = ProjPair.parse


def _oracle_point(m, chart):
    cols = list(zip(m[0], m[1]))
    return {k: proj_normalize(*v) for k, v in chart_coords_from_matrix(cols, chart).items()}


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_transitions_match_matrix_oracle(n):
    rng = random.Random(n)
    for _ in range(10):
        m = random_main_matrix(n, rng)
        p = plucker_to_params(m)
        assert p.as_dict() == _oracle_point(m, (1, 2))
        for c in all_charts(n):
            assert transition(c, p).as_dict() == _oracle_point(m, c), c


@pytest.mark.parametrize("n", [5, 6])
def test_composition_law(n):
    rng = random.Random(100 + n)
    p = random_interior_point(n, rng)
    for a in all_charts(n):
        for b in all_charts(n):
            assert compose_check(a, b, p)


def test_first_closed_form_in_chart_ij_has_wrong_sign():
    rng = random.Random(7)
    for n in (5, 6, 7):
        for _ in range(10):
            m = random_main_matrix(n, rng)
            p = plucker_to_params(m)
            for i, j in combinations(range(3, n + 1), 2):
                truth = _oracle_point(m, (i, j))
                for k, l in combinations([x for x in range(3, n + 1) if x not in (i, j)], 2):
                    x, y = formula_ij(p, i, j, k, l)
                    x2, y2 = formula_ij(p, i, j, k, l, second=True)
                    assert proj_normalize(x2, y2) == truth[(k, l)]
                    assert proj_normalize(-x, y) == truth[(k, l)]


inputs = st.lists(st.sampled_from(["1:0", "0:1", "1:1", "2:1", "-1:1", "3:2", "1:3", "-2:5"]), min_size=2, max_size=4)


@given(inputs)
def test_lift_satisfies_relations(raw):
    try:
        p = lift([P(v) for v in raw])
    except LiftUndefined:
        # two inputs equal to the same zero or infinity
        assert any(raw.count(v) > 1 for v in ("1:0", "0:1"))
        return
    assert p.satisfies_relations()


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 7), st.integers(0, 10 ** 6))
def test_realize_roundtrip(n, seed):
    p = random_interior_point(n, random.Random(seed))
    assert plucker_to_params(realize(p)) == p
    assert p.is_interior and p.satisfies_relations()


def test_swap_convention():
    p = random_interior_point(5, random.Random(3))
    for (k, l), v in p.coords:
        assert p[(l, k)] == v.inverse()


def test_plucker_rejects_wrong_chart():
    m = as_matrix([[1, 2, 1, 1], [0, 0, 1, 2]])
    with pytest.raises(InvalidProjective):
        plucker_to_params(m, (1, 2))


@pytest.mark.parametrize("n", [5, 6])
def test_jacobian_rank_interior_against_oracles(n):
    rng = random.Random(11 * n)
    for _ in range(8):
        p = random_interior_point(n, rng)
        r = jacobian_rank_at(p)
        assert r == expected_rank(n)
        assert r == rank_mod_p(jacobian(p))
        assert r == sympy_jacobian_rank({k: (v.a, v.b) for k, v in p.coords})


@pytest.mark.parametrize("n", [5, 6, 7])
def test_jacobian_rank_boundary(n):
    pts = boundary_points(n, random.Random(n), 20)
    assert len(pts) == 20 and all(not p.is_interior for p in pts)
    for p in pts:
        assert jacobian_rank_at(p) == expected_rank(n)
    for p in pts[:5]:
        assert sympy_jacobian_rank({k: (v.a, v.b) for k, v in p.coords}) == expected_rank(n)


def test_rank_drops_at_the_special_point():
    # at (1:1)^N the variety is singular: the relation gradients degenerate
    for n, want in ((5, 1), (6, 3)):
        p = pattern_point(n, {k: ONE for k in combinations(range(3, n + 1), 2)})
        assert jacobian_rank_at(p) == want
        assert sympy_jacobian_rank({k: (v.a, v.b) for k, v in p.coords}) == want


# -- extension to the boundary ---------------------------------------------------


def test_collapse_n5():
    for c in ("2:1", "-1:1", "5:3"):
        p = pattern_point(5, {(3, 4): P("1:0"), (3, 5): P("1:0"), (4, 5): P(c)})
        v = classify_extension(3, p)
        assert isinstance(v, Collapses) and v.locus == "F˘_345"
        assert all(x == ONE for _, x in v.point.coords)


def test_undefined_on_hat_locus():
    p = pattern_point(5, {(3, 4): ONE, (3, 5): ONE, (4, 5): ONE})
    v = classify_extension(3, p)
    assert isinstance(v, Undefined) and v.triple == (3, 4, 5)


def test_defined_away_from_special_loci_matches_matrix():
    # column 4 collides with column 5: c_45 = (1:1) is a boundary point;
    # the extension must agree with the chart (1,3) coordinates of the matrix
    m = as_matrix([[1, 0, 1, 2, 2], [0, 1, 3, 5, 5]])
    p = ChartPoint.make(5, _oracle_point(m, (1, 2)))
    assert not p.is_interior
    v = classify_extension(3, p)
    assert isinstance(v, Defined)
    assert v.point.as_dict() == _oracle_point(m, (1, 3))


def test_interior_point_is_not_boundary():
    with pytest.raises(NotBoundary):
        classify_extension(3, random_interior_point(5, random.Random(0)))


BULLETS_THAT_HOLD = ["c1", "c2", "d", "e", "f", "g1", "h1"]


@pytest.mark.parametrize("bullet", BULLETS_THAT_HOLD)
def test_case_bullets_that_hold(bullet):
    r = check_case_bullets((5, 6))[bullet]
    assert r.checked > 0 and r.failures == 0


def _both(m, chart):
    """Chart coordinates of a degenerate matrix, only where they are determinate."""
    cols = list(zip(m[0], m[1]))
    raw = chart_coords_from_matrix(cols, chart)
    assert all(v != (0, 0) for v in raw.values())
    return {k: proj_normalize(*v) for k, v in raw.items()}


def test_counterexample_bullet_a1():
    # column 5 parallel to column 2: c'_45 = 0 in chart (1,2) yet d_45 = (1:3) in chart (1,3)
    m = as_matrix([[1, 0, 1, 2, 0], [0, 1, 1, 3, 1]])
    c, d = _both(m, (1, 2)), _both(m, (1, 3))
    assert c[(4, 5)].b == 0
    assert d[(4, 5)] == P("1:3")
    # the package's extension agrees with the matrix
    v = classify_extension(3, ChartPoint.make(5, c))
    assert v.point.as_dict() == d


def test_counterexample_bullet_g2():
    # c'_34 = 0 and c_45 = 0 in chart (1,2) yet d_45 = (2:1) in chart (1,3)
    m = as_matrix([[1, 0, 1, 0, 1], [0, 1, 1, 1, 2]])
    c, d = _both(m, (1, 2)), _both(m, (1, 3))
    assert c[(3, 4)].b == 0 and c[(4, 5)].a == 0
    assert d[(4, 5)] == P("2:1")
    v = classify_extension(3, ChartPoint.make(5, c))
    assert v.point.as_dict() == d


@pytest.mark.parametrize("bullet", ["a1", "a2", "b1", "b2", "g2"])
def test_case_bullets_that_fail_have_counterexamples(bullet):
    r = check_case_bullets((5, 6))[bullet]
    assert r.failures > 0 and r.example is not None


def test_two_closed_forms_agree_where_determinate():
    from g2chow.charts import case_witnesses, formula_1j

    agree = 0
    for n in (5, 6):
        for p in case_witnesses(n):
            for j in range(3, n + 1):
                for k, l in combinations([x for x in range(3, n + 1) if x != j], 2):
                    a, b = formula_1j(p, j, k, l), formula_1j(p, j, k, l, second=True)
                    if (0, 0) not in (a, b):
                        assert proj_normalize(*a) == proj_normalize(*b)
                        agree += 1
    assert agree > 1000
