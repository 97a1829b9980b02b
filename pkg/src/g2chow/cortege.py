"""Polyhedral decompositions of the hypersimplex into matroid polytopes,
stable trees, and the correspondence between them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import DimensionMismatch
from .exact import dot
from .matroid import Rank2Matroid, enumerate_admissible, hypersimplex, polytope_of
from .polytope import interiors_intersect, is_face_to_face

Split = frozenset


# -- cortèges -------------------------------------------------------------------

@dataclass(frozen=True)
class Cortege:
    n: int
    members: tuple[Rank2Matroid, ...]

    @classmethod
    def of(cls, n: int, members: Iterable[Rank2Matroid]) -> "Cortege":
        return cls(n, tuple(sorted(set(members))))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @property
    def label(self) -> str:
        return "{" + ", ".join(m.label for m in self.members) + "}"

    def sort_key(self):
        return (len(self.members), tuple(m.sort_key() for m in self.members))

    def to_json(self) -> list:
        return [m.to_json() for m in self.members]


_intersect_cache: dict = {}


def compatible(a: Rank2Matroid, b: Rank2Matroid) -> bool:
    """True iff the open polytopes of a and b are disjoint."""
    key = (a, b) if a.sort_key() <= b.sort_key() else (b, a)
    if key not in _intersect_cache:
        _intersect_cache[key] = not interiors_intersect(polytope_of(a), polytope_of(b))
    return _intersect_cache[key]


def is_decomposition(c: Cortege) -> bool:
    for m in c.members:
        if not m.is_full_dim or m.n != c.n:
            raise DimensionMismatch(f"{m.label} is not a full-dimensional polytope of the hypersimplex")
    total = sum((polytope_of(m).volume for m in c.members), Fraction(0))
    if total != hypersimplex(c.n).volume:
        return False
    return all(compatible(a, b) for a, b in combinations(c.members, 2))


def face_to_face(c: Cortege) -> bool:
    return all(is_face_to_face(polytope_of(a), polytope_of(b)) for a, b in combinations(c.members, 2))


def _probe(m: Rank2Matroid, hyperplanes: list) -> tuple[Fraction, ...]:
    """A point inside polytope_of(m) that lies on none of the given hyperplanes."""
    p = polytope_of(m)
    bary = p.barycenter()
    n = m.n
    direction = [Fraction(3 ** i) for i in range(n)]
    mean = sum(direction) / n
    direction = [x - mean for x in direction]
    eps = Fraction(1, 10 ** 3)
    while True:
        x = tuple(b + eps * d for b, d in zip(bary, direction))
        if p.contains(x, strict=True) and all(dot(nv, x) != off for nv, off in hyperplanes):
            return x
        eps /= 7


@lru_cache(maxsize=None)
def _search_data(n: int):
    polys = enumerate_admissible(n, full_dim_only=True)
    hyper = sorted({f for m in polys for f in polytope_of(m).facets})
    probes = [_probe(m, hyper) for m in polys]
    inside = [frozenset(i for i, m in enumerate(polys) if polytope_of(m).contains(x, strict=True)) for x in probes]
    vols = [polytope_of(m).volume for m in polys]
    return polys, probes, inside, vols


def enumerate_decompositions(n: int) -> list[Cortege]:
    """All decompositions of the hypersimplex, the trivial one included.

    Depth-first: pick the first probe point not yet covered by a chosen
    polytope and branch over the compatible polytopes containing it; any
    decomposition contains exactly one polytope through a generic probe, so
    each is reached along exactly one path.
    """
    if not 3 <= n <= 7:
        raise ValueError("decomposition enumeration supports 3 <= n <= 7")
    return list(_decompositions(n))


@lru_cache(maxsize=None)
def _decompositions(n: int) -> tuple[Cortege, ...]:
    polys, probes, inside, vols = _search_data(n)
    total = hypersimplex(n).volume
    found: set[frozenset[int]] = set()

    def ok(i: int, chosen: list[int]) -> bool:
        return all(compatible(polys[i], polys[j]) for j in chosen)

    def extend(chosen: list[int], vol: Fraction, covered: frozenset[int]) -> None:
        if vol == total:
            found.add(frozenset(chosen))
            return
        target = next((k for k in range(len(probes)) if k not in covered), None)
        if target is None:
            # every probe covered but volume missing: fall back to plain extension
            cands = [i for i in range(len(polys)) if i not in chosen]
        else:
            cands = sorted(inside[target])
        for i in cands:
            if vol + vols[i] > total or not ok(i, chosen):
                continue
            extra = frozenset(k for k in range(len(probes)) if i in inside[k])
            extend(chosen + [i], vol + vols[i], covered | extra)

    extend([], Fraction(0), frozenset())
    out = [Cortege.of(n, (polys[i] for i in s)) for s in found]
    return tuple(sorted(out, key=Cortege.sort_key))


# -- stable trees -----------------------------------------------------------------

@dataclass(frozen=True)
class StableTree:
    """Leaf-labelled tree on leaves 1..n, every internal vertex of degree >= 3.

    Stored canonically by its splits: for each internal edge, the leaf set
    on the side away from leaf 1.
    """

    n: int
    splits: frozenset

    @classmethod
    def star(cls, n: int) -> "StableTree":
        return cls(n, frozenset())

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "StableTree":
        adj: dict[int, set[int]] = {}
        for u, v in edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for v, nb in adj.items():
            if v > n and len(nb) < 3:
                raise ValueError("internal vertex of degree < 3")
            if v <= n and len(nb) != 1:
                raise ValueError("leaf of degree != 1")
        splits = set()
        for u, v in _edges(adj):
            if u > n and v > n:
                side = _leaves_beyond(adj, v, u, n)
                if 1 in side:
                    side = frozenset(range(1, n + 1)) - side
                splits.add(side)
        return cls(n, frozenset(splits))

    def edges(self) -> list[tuple[int, int]]:
        """Explicit edge list; internal vertices are numbered from n+1."""
        n = self.n
        adj: dict[int, set[int]] = {n + 1: set(range(1, n + 1))}
        for i in range(1, n + 1):
            adj[i] = {n + 1}
        nxt = n + 2
        for s in sorted(self.splits, key=lambda s: (-len(s), sorted(s))):
            # find the internal vertex at which s is a union of branches
            for v in sorted(x for x in adj if x > n):
                branches = [(w, _leaves_beyond(adj, w, v, n)) for w in adj[v]]
                move = [w for w, leaves in branches if leaves <= s]
                if frozenset().union(*(leaves for w, leaves in branches if w in move)) == s and 2 <= len(move) < len(branches) - 1:
                    new = nxt
                    nxt += 1
                    adj[new] = set()
                    for w in move:
                        adj[v].discard(w)
                        adj[w].discard(v)
                        adj[w].add(new)
                        adj[new].add(w)
                    adj[v].add(new)
                    adj[new].add(v)
                    break
            else:
                raise ValueError("incompatible splits")
        return sorted(_edges(adj))

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {}
        for u, v in self.edges():
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return adj

    def internal_partitions(self) -> list[list[frozenset]]:
        """For each internal vertex, the leaf sets of the components of T - v."""
        adj = self.adjacency()
        out = []
        for v in sorted(x for x in adj if x > self.n):
            out.append(sorted((_leaves_beyond(adj, w, v, self.n) for w in adj[v]), key=min))
        return out

    def sort_key(self):
        return (len(self.splits), sorted(sorted(s) for s in self.splits))

    def to_json(self) -> dict:
        return {"n": self.n, "splits": sorted(sorted(s) for s in self.splits)}

    def to_dot(self) -> str:
        lines = ["graph T {"]
        for i in range(1, self.n + 1):
            lines.append(f'  {i} [shape=circle, label="{i}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines)


def _edges(adj: dict[int, set[int]]) -> list[tuple[int, int]]:
    return sorted({(min(u, v), max(u, v)) for u, nb in adj.items() for v in nb})


def _leaves_beyond(adj: dict[int, set[int]], start: int, avoid: int, n: int) -> frozenset:
    """Leaves reachable from ``start`` without passing through ``avoid``."""
    seen = {avoid, start}
    stack = [start]
    leaves = set()
    while stack:
        v = stack.pop()
        if v <= n:
            leaves.add(v)
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(leaves)


def enumerate_stable_trees(n: int) -> list[StableTree]:
    """All stable trees on n labelled leaves, by inserting leaves one at a time.

    A tree on leaves 1..m arises from exactly one tree on 1..m-1 (delete leaf
    m and smooth a degree-2 vertex), either by attaching m to an internal
    vertex or by subdividing an edge.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    trees = [[(1, 4), (2, 4), (3, 4)]]
    for m in range(4, n + 1):
        nxt = []
        for edges in trees:
            # relabel internal vertices above m so the new leaf fits
            edges = [tuple(x + 1 if x >= m else x for x in e) for e in edges]
            internal = sorted({x for e in edges for x in e if x > m})
            top = max(internal) + 1
            for v in internal:
                nxt.append(edges + [(m, v)])
            for i, (u, v) in enumerate(edges):
                rest = edges[:i] + edges[i + 1:]
                nxt.append(rest + [(u, top), (v, top), (m, top)])
        trees = nxt
    out = {StableTree.from_edges(n, e) for e in trees}
    if len(out) != len(trees):
        raise RuntimeError("leaf insertion produced a repeated tree")
    return sorted(out, key=StableTree.sort_key)


def tree_to_cortege(t: StableTree) -> Cortege:
    return Cortege.of(t.n, (Rank2Matroid.make(t.n, part) for part in t.internal_partitions()))


@dataclass
class BijectionReport:
    n: int
    trees: int
    decompositions: int
    injective: bool
    missing: list  # decompositions with no tree
    extra: list  # tree images that are not decompositions

    @property
    def ok(self) -> bool:
        return self.injective and not self.missing and not self.extra and self.trees == self.decompositions

    def __bool__(self) -> bool:
        return self.ok


def bijection_check(n: int) -> BijectionReport:
    trees = enumerate_stable_trees(n)
    images = [tree_to_cortege(t) for t in trees]
    decs = set(enumerate_decompositions(n))
    img = set(images)
    return BijectionReport(
        n,
        len(trees),
        len(decs),
        len(img) == len(images),
        sorted(decs - img, key=Cortege.sort_key),
        sorted(img - decs, key=Cortege.sort_key),
    )
