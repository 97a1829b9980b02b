"""Chambers of the hypersimplex cut out by the full-dimensional matroid polytopes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cortege import Cortege, enumerate_decompositions
from .errors import OutOfHypersimplex
from .exact import as_fraction, dot
from .lp import feasible_strict
from .matroid import enumerate_admissible, hypersimplex, polytope_of
from .polytope import Facet, hull, vertices_from_h


@dataclass(frozen=True)
class Chamber:
    n: int
    omega: frozenset  # matroid labels
    witness: tuple[Fraction, ...]
    dim: int
    lower: frozenset = frozenset()  # lower-dimensional polytopes through the witness

    def to_json(self) -> dict:
        return {
            "omega": sorted(self.omega),
            "witness": [str(x) for x in self.witness],
            "dim": self.dim,
            "lower_signature": sorted(self.lower),
        }


def omega_of(x: Sequence, n: int | None = None) -> frozenset:
    """Labels of the full-dimensional polytopes whose interior contains x."""
    x = tuple(as_fraction(v) for v in x)
    n = n or len(x)
    if len(x) != n or not hypersimplex(n).contains(x):
        raise OutOfHypersimplex(f"{[str(v) for v in x]} is not in the hypersimplex")
    return frozenset(m.label for m in enumerate_admissible(n) if polytope_of(m).contains(x, strict=True))


def lower_signature(x: Sequence, n: int) -> frozenset:
    """Lower-dimensional admissible polytopes containing x in their relative interior."""
    out = set()
    for m in enumerate_admissible(n, full_dim_only=False):
        if m.is_full_dim:
            continue
        p = polytope_of(m)
        if p.dim > 0 and p.contains(x, strict=True):
            out.add(m.label)
    return frozenset(out)


def _hyperplanes(n: int) -> list[Facet]:
    """Distinct facet hyperplanes of the full-dim polytopes, minus those of the hypersimplex."""
    outer = {_orient(f) for f in hypersimplex(n).facets}
    found = set()
    for m in enumerate_admissible(n):
        for f in polytope_of(m).facets:
            h = _orient(f)
            if h not in outer:
                found.add(h)
    return sorted(found)


def _orient(f: Facet) -> Facet:
    nv, b = f
    lead = next(c for c in nv if c != 0)
    return f if lead > 0 else (tuple(-c for c in nv), -b)


@dataclass(frozen=True)
class Cell:
    constraints: tuple[Facet, ...]  # strict inequalities normal.x > offset
    witness: tuple[Fraction, ...]


@lru_cache(maxsize=None)
def arrangement_cells(n: int) -> tuple[Cell, ...]:
    """Open cells of the hyperplane arrangement inside the hypersimplex.

    Cells are split one hyperplane at a time; each side is kept when an
    exact LP finds a point strictly inside it.
    """
    delta = hypersimplex(n)
    eqs = delta.equations
    start = delta.barycenter()
    cells = [Cell(tuple(delta.facets), start)]
    for nv, b in _hyperplanes(n):
        nxt = []
        pos = (nv, b)
        neg = (tuple(-c for c in nv), -b)
        for cell in cells:
            val = dot(nv, cell.witness) - b
            for side, sign in ((pos, 1), (neg, -1)):
                cons = cell.constraints + (side,)
                if val * sign > 0:
                    nxt.append(Cell(cons, cell.witness))
                    continue
                w = feasible_strict(cons, eqs, n)
                if w is not None:
                    nxt.append(Cell(cons, tuple(w)))
        cells = nxt
    return tuple(cells)


def cell_volume(n: int, cell: Cell) -> Fraction:
    verts = vertices_from_h(cell.constraints, hypersimplex(n).equations, n)
    return hull(verts).volume


@lru_cache(maxsize=None)
def _chambers(n: int) -> tuple[Chamber, ...]:
    by_omega: dict[frozenset, Chamber] = {}
    for cell in arrangement_cells(n):
        om = omega_of(cell.witness, n)
        if om not in by_omega:
            by_omega[om] = Chamber(n, om, cell.witness, n - 1, lower_signature(cell.witness, n))
    return tuple(sorted(by_omega.values(), key=lambda c: (len(c.omega), sorted(c.omega))))


def enumerate_chambers(n: int) -> list[Chamber]:
    """Full-dimensional chambers, one per distinct signature omega."""
    if not 3 <= n <= 6:
        raise ValueError("chamber enumeration supports 3 <= n <= 6")
    return list(_chambers(n))


def check_union_chamber(n: int, c: Chamber, decompositions: Sequence[Cortege] | None = None) -> bool:
    """Every decomposition has exactly one member whose interior holds the chamber."""
    decs = enumerate_decompositions(n) if decompositions is None else decompositions
    return all(sum(m.label in c.omega for m in d.members) == 1 for d in decs)
