from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from g2chow.catalog import cortege_splits
from g2chow.cortege import (
    Cortege,
    StableTree,
    bijection_check,
    compatible,
    enumerate_decompositions,
    enumerate_stable_trees,
    face_to_face,
    is_decomposition,
    tree_to_cortege,
)
from g2chow.errors import DimensionMismatch
from g2chow.matroid import Rank2Matroid, enumerate_admissible, hypersimplex, polytope_of
from oracles import compatible_split_systems

# decompositions of the second hypersimplex, trivial included; the same
# numbers count stable trees (oracle: compatible split systems)
COUNTS = {3: 1, 4: 4, 5: 26, 6: 236}


@pytest.mark.parametrize("n", sorted(COUNTS))
def test_decomposition_counts(n):
    assert len(enumerate_decompositions(n)) == COUNTS[n]


@pytest.mark.parametrize("n", sorted(COUNTS))
def test_tree_counts_match_split_systems(n):
    assert len(enumerate_stable_trees(n)) == len(compatible_split_systems(n)) == COUNTS[n]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_decomposition_splits_are_exactly_the_split_systems(n):
    systems = {frozenset(cortege_splits(c)) for c in enumerate_decompositions(n)}
    assert systems == set(compatible_split_systems(n))


@pytest.mark.slow
def test_n7_counts():
    assert len(enumerate_decompositions(7)) == 2752
    assert len(compatible_split_systems(7)) == 2752


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_volume_conservation_and_validity(n):
    total = hypersimplex(n).volume
    for c in enumerate_decompositions(n):
        assert sum(polytope_of(m).volume for m in c.members) == total
        assert is_decomposition(c)


@pytest.mark.parametrize("n", [4, 5])
def test_face_to_face(n):
    assert all(face_to_face(c) for c in enumerate_decompositions(n))


def test_n4_octahedron_pyramids():
    decs = [c for c in enumerate_decompositions(4) if not c.is_trivial]
    assert len(decs) == 3
    for c in decs:
        assert [len(polytope_of(m).vertices) for m in c.members] == [5, 5]


def test_n5_structure():
    decs = enumerate_decompositions(5)
    shapes = Counter(tuple(sorted(len(polytope_of(m).vertices) for m in c.members)) for c in decs)
    assert shapes == {(10,): 1, (7, 9): 10, (7, 7, 8): 15}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_bijection(n):
    r = bijection_check(n)
    assert r.ok and r.trees == r.decompositions == COUNTS[n]


def test_star_is_trivial():
    for n in range(3, 7):
        assert tree_to_cortege(StableTree.star(n)).is_trivial


@pytest.mark.parametrize("n", [4, 5, 6])
def test_tree_invariants(n):
    for t in enumerate_stable_trees(n):
        adj = t.adjacency()
        edges = t.edges()
        assert len(edges) == len(adj) - 1  # connected + this count = acyclic
        seen, stack = {1}, [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        assert seen == set(adj)
        for v, nb in adj.items():
            assert len(nb) == 1 if v <= n else len(nb) >= 3
        assert StableTree.from_edges(n, edges) == t


def test_incompatible_pair_is_rejected():
    a = Rank2Matroid.make(4, [[1, 2], [3], [4]])
    b = Rank2Matroid.make(4, [[1, 3], [2], [4]])
    assert not compatible(a, b)
    assert not is_decomposition(Cortege.of(4, [a, b]))


def test_lower_dimensional_member_rejected():
    with pytest.raises(DimensionMismatch):
        is_decomposition(Cortege.of(4, [Rank2Matroid.make(4, [[1, 2], [3, 4]])]))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(enumerate_decompositions(5)), st.lists(st.fractions(0, 1, max_denominator=9), min_size=4, max_size=4))
def test_generic_points_lie_in_one_member(c, xs):
    x = tuple(xs) + (2 - sum(xs),)
    if not hypersimplex(5).contains(x, strict=True):
        return
    on_boundary = any(polytope_of(m).contains(x) and not polytope_of(m).contains(x, strict=True) for m in c.members)
    hits = sum(polytope_of(m).contains(x, strict=True) for m in c.members)
    assert hits == 1 or (hits == 0 and on_boundary)


def test_tree_dot_output():
    t = enumerate_stable_trees(5)[-1]
    dot = t.to_dot()
    assert dot.startswith("graph") and dot.count("--") == len(t.edges())


def test_full_dim_members_only():
    for c in enumerate_decompositions(5):
        assert all(m.is_full_dim for m in c.members)
        assert all(m in enumerate_admissible(5) for m in c.members)
        assert Fraction(sum(polytope_of(m).volume for m in c.members)) == 11
