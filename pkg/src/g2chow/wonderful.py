"""Building set of intersections of the loci where a triple of coordinates is (1:1).

The locus for a triple {i,j,k} forces c_ij, c_ik, c_jk to (1:1); by the
cubic relations two forced pairs of a triple force the third, so any
intersection is described by a family of disjoint index blocks, every pair
inside a block being forced.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import ScheduleInvalid


@dataclass(frozen=True)
class BuildingElement:
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "BuildingElement":
        bl = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        for b in bl:
            if len(b) < 3:
                raise ValueError("blocks must have at least three elements")
        flat = [x for b in bl for x in b]
        if len(flat) != len(set(flat)):
            raise ValueError("blocks must be disjoint")
        return cls(bl)

    @property
    def o(self) -> int:
        """Number of coordinates forced to (1:1)."""
        return sum(comb(len(b), 2) for b in self.blocks)

    @property
    def forced_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(p for b in self.blocks for p in combinations(b, 2))

    @property
    def triples(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(t for b in self.blocks for t in combinations(b, 3))

    def refines(self, other: "BuildingElement") -> bool:
        """Every block of self lies inside a block of other (other is the smaller locus)."""
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)

    @property
    def label(self) -> str:
        return "F^_" + ",".join("".join(map(str, b)) for b in self.blocks)

    def sort_key(self):
        return (-self.o, self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "o": self.o}


def closure(triples: Iterable[Sequence[int]]) -> BuildingElement:
    """Intersection of the triple loci: connected components of the union of triangles."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    triples = [tuple(t) for t in triples]
    if not triples:
        raise ValueError("closure of an empty family")
    for t in triples:
        if len(set(t)) != 3:
            raise ValueError(f"{t} is not a 3-subset")
        for x in t:
            parent.setdefault(x, x)
        for x in t[1:]:
            ra, rb = find(t[0]), find(x)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for x in parent:
        comps.setdefault(find(x), []).append(x)
    return BuildingElement.of(comps.values())


def meet(a: BuildingElement, b: BuildingElement) -> BuildingElement:
    """Intersection of two building-set loci."""
    return closure(list(a.triples) + list(b.triples))


def _block_families(items: list[int]) -> list[list[tuple[int, ...]]]:
    """All nonempty families of disjoint subsets of ``items`` of size >= 3."""
    out: list[list[tuple[int, ...]]] = []

    def rec(rest: list[int], acc: list[tuple[int, ...]]):
        if acc:
            out.append(list(acc))
        for size in range(3, len(rest) + 1):
            for block in combinations(rest, size):
                # keep blocks in increasing order of minimum to avoid repeats
                if acc and block[0] < acc[-1][0]:
                    continue
                remaining = [x for x in rest if x not in block and x > block[0]]
                rec(remaining, acc + [block])

    rec(items, [])
    return out


def generate_building_set(n: int) -> list[BuildingElement]:
    if n < 3:
        raise ValueError("n must be at least 3")
    fams = _block_families(list(range(3, n + 1)))
    return sorted({BuildingElement.of(f) for f in fams}, key=BuildingElement.sort_key)


@dataclass(frozen=True)
class BlowupSchedule:
    elements: tuple[BuildingElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def to_json(self) -> list:
        return [e.to_json() for e in self.elements]


def validate_schedule(order: Sequence[BuildingElement], universe: Iterable[BuildingElement]) -> None:
    """Raise ScheduleInvalid unless the order is a valid blow-up order.

    Checks: o is non-increasing, and in every prefix the meet of any two
    members, when it belongs to the universe, already occurs in that prefix.
    """
    universe = set(universe)
    seen: set[BuildingElement] = set()
    for idx, e in enumerate(order):
        if idx and e.o > order[idx - 1].o:
            raise ScheduleInvalid(f"o increases at position {idx}")
        for f in seen:
            m = meet(e, f)
            if m in universe and m not in seen and m != e:
                raise ScheduleInvalid(f"{m.label} (meet of {e.label}, {f.label}) comes after them")
        seen.add(e)


def schedule(elements: Iterable[BuildingElement]) -> BlowupSchedule:
    elems = sorted(set(elements), key=BuildingElement.sort_key)
    if elems:
        top = elems[0]
        everything = {x for e in elems for b in e.blocks for x in b}
        if top.blocks != (tuple(sorted(everything)),):
            raise ScheduleInvalid("the deepest locus must come first")
    validate_schedule(elems, elems)
    return BlowupSchedule(tuple(elems))


def comparable(a: BuildingElement, b: BuildingElement) -> bool:
    return a.refines(b) or b.refines(a)


def nest_candidates(elements: Iterable[BuildingElement]) -> list[tuple[BuildingElement, ...]]:
    """All nonempty families that are chains under refinement.

    Only chains are produced; they are candidates for nests, nothing more.
    """
    elems = sorted(set(elements), key=BuildingElement.sort_key)
    out: list[tuple[BuildingElement, ...]] = []

    def rec(start: int, chain: list[BuildingElement]):
        for i in range(start, len(elems)):
            e = elems[i]
            if all(comparable(e, c) for c in chain):
                chain.append(e)
                out.append(tuple(chain))
                rec(i + 1, chain)
                chain.pop()

    rec(0, [])
    return out


def inclusion_dot(elements: Iterable[BuildingElement]) -> str:
    """Hasse diagram of the refinement order in DOT format."""
    elems = sorted(set(elements), key=BuildingElement.sort_key)
    lines = ["digraph G {"]
    for e in elems:
        lines.append(f'  "{e.label}" [label="{e.label} o={e.o}"];')
    for a in elems:
        for b in elems:
            if a != b and a.refines(b):
                covered = any(c not in (a, b) and a.refines(c) and c.refines(b) for c in elems)
                if not covered:
                    lines.append(f'  "{a.label}" -> "{b.label}";')
    lines.append("}")
    return "\n".join(lines)
