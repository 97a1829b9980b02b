from fractions import Fraction

import pytest

from g2chow.chamber import (
    arrangement_cells,
    cell_volume,
    check_union_chamber,
    enumerate_chambers,
    lower_signature,
    omega_of,
)
from g2chow.cortege import enumerate_decompositions
from g2chow.errors import OutOfHypersimplex
from g2chow.matroid import enumerate_admissible, hypersimplex
from oracles import flats_contains_strict, sampled_chamber_signatures

CHAMBERS = {3: 1, 4: 8, 5: 76}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chamber_counts(n):
    assert len(enumerate_chambers(n)) == CHAMBERS[n]


@pytest.mark.parametrize("n,samples", [(4, 500), (5, 20000)])
def test_chambers_match_sampling_oracle(n, samples):
    ms = enumerate_admissible(n)
    assert sampled_chamber_signatures(n, ms, samples) == {c.omega for c in enumerate_chambers(n)}


@pytest.mark.parametrize("n", [4, 5])
def test_union_theorem(n):
    decs = enumerate_decompositions(n)
    for c in enumerate_chambers(n):
        assert check_union_chamber(n, c, decs)


@pytest.mark.parametrize("n", [4, 5])
def test_cells_tile_the_hypersimplex(n):
    cells = arrangement_cells(n)
    assert sum(cell_volume(n, c) for c in cells) == hypersimplex(n).volume
    # at these n every cell has its own signature
    assert len(cells) == len(enumerate_chambers(n))


@pytest.mark.parametrize("n", [4, 5])
def test_witnesses_are_generic(n):
    for c in enumerate_chambers(n):
        assert hypersimplex(n).contains(c.witness, strict=True)
        ms = enumerate_admissible(n)
        assert c.omega == frozenset(m.label for m in ms if flats_contains_strict(c.witness, n, m.classes))
        assert c.lower == lower_signature(c.witness, n) == frozenset()


def test_omega_of_example_point():
    x = (Fraction(3, 4), Fraction(3, 4), Fraction(1, 4), Fraction(1, 4))
    om = omega_of(x)
    ms = enumerate_admissible(4)
    assert om == frozenset(m.label for m in ms if flats_contains_strict(x, 4, m.classes))
    # the hypersimplex and the one pyramid with x3 + x4 < 1
    assert om == frozenset({"1|2|3|4", "1|2|34"})


def test_omega_rejects_outside_points():
    with pytest.raises(OutOfHypersimplex):
        omega_of((1, 1, 1, 0))
    with pytest.raises(OutOfHypersimplex):
        omega_of((Fraction(3, 2), Fraction(1, 2), 0, 0))


def test_every_chamber_contains_delta():
    for c in enumerate_chambers(5):
        assert "1|2|3|4|5" in c.omega
