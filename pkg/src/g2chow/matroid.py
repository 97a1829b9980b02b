"""Rank-2 matroids, admissible pair sets and their polytopes.

A rank-2 matroid on {1..n} is a set of loops plus a partition of the other
elements into parallel classes; its bases (the admissible set sigma) are
the pairs taken from two different classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import NotAdmissible
from .polytope import Polytope, hull

Pair = tuple[int, int]


@dataclass(frozen=True, order=False)
class Rank2Matroid:
    n: int
    loops: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(self.loops + tuple(x for c in self.classes for x in c))
        if seen != list(range(1, self.n + 1)):
            raise ValueError(f"loops and classes must partition 1..{self.n}")
        if len(self.classes) < 2:
            raise ValueError("a rank-2 matroid needs at least two parallel classes")

    @classmethod
    def make(cls, n: int, classes: Iterable[Iterable[int]], loops: Iterable[int] = ()) -> "Rank2Matroid":
        cl = tuple(sorted((tuple(sorted(c)) for c in classes if c), key=lambda c: c[0]))
        return cls(n, tuple(sorted(loops)), cl)

    @classmethod
    def discrete(cls, n: int) -> "Rank2Matroid":
        return cls.make(n, [[i] for i in range(1, n + 1)])

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def is_full_dim(self) -> bool:
        return not self.loops and self.k >= 3

    def sort_key(self):
        sizes = tuple(sorted((len(c) for c in self.classes), reverse=True))
        return (len(self.loops), self.loops, sizes, self.classes)

    def __lt__(self, other: "Rank2Matroid") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def label(self) -> str:
        """Short id such as ``12|3|4|5`` (loops appended after ``/``)."""
        sep = "," if self.n >= 10 else ""
        body = "|".join(sep.join(map(str, c)) for c in self.classes)
        if self.loops:
            body += "/" + sep.join(map(str, self.loops))
        return body

    def __str__(self) -> str:
        return self.label

    def to_json(self) -> dict:
        return {"n": self.n, "loops": list(self.loops), "classes": [list(c) for c in self.classes]}

    @classmethod
    def from_json(cls, d: dict) -> "Rank2Matroid":
        return cls.make(d["n"], d["classes"], d.get("loops", ()))

    @classmethod
    def parse(cls, n: int, label: str) -> "Rank2Matroid":
        body, _, lp = label.partition("/")
        sep = "," if n >= 10 else ""

        def split(s):
            return [int(x) for x in (s.split(",") if sep else s)] if s else []

        return cls.make(n, [split(c) for c in body.split("|")], split(lp))


def sigma_of(m: Rank2Matroid) -> frozenset[Pair]:
    """Admissible set: pairs {i,j} (i<j) taken from distinct parallel classes."""
    out = set()
    for a, b in combinations(m.classes, 2):
        for i in a:
            for j in b:
                out.add((min(i, j), max(i, j)))
    return frozenset(out)


def recognize(n: int, sigma: Iterable[Pair]) -> Rank2Matroid:
    """The unique rank-2 matroid whose basis set is ``sigma``.

    Raises NotAdmissible when no such matroid exists.
    """
    pairs = {(min(i, j), max(i, j)) for i, j in sigma}
    if not pairs:
        raise NotAdmissible("empty pair set")
    support = {x for p in pairs for x in p}
    loops = [i for i in range(1, n + 1) if i not in support]
    live = sorted(support)
    # i ~ j iff {i,j} is not a basis; group greedily then verify
    classes: list[list[int]] = []
    for i in live:
        for c in classes:
            if (min(c[0], i), max(c[0], i)) not in pairs:
                c.append(i)
                break
        else:
            classes.append([i])
    if len(classes) < 2:
        raise NotAdmissible("fewer than two parallel classes")
    m = Rank2Matroid.make(n, classes, loops)
    if sigma_of(m) != pairs:
        raise NotAdmissible(f"{sorted(pairs)} is not a rank-2 basis pattern")
    return m


def lattice_point(n: int, pair: Pair) -> tuple[int, ...]:
    i, j = pair
    return tuple(int(k == i or k == j) for k in range(1, n + 1))


@lru_cache(maxsize=None)
def polytope_of(m: Rank2Matroid) -> Polytope:
    return hull(lattice_point(m.n, p) for p in sorted(sigma_of(m)))


@lru_cache(maxsize=None)
def hypersimplex(n: int) -> Polytope:
    return polytope_of(Rank2Matroid.discrete(n))


@dataclass(frozen=True)
class ParamDescriptor:
    k: int
    kind: str  # "point" or "M0k"
    dim: int

    @property
    def unverified(self) -> bool:
        """k = 2 strata get the point descriptor by convention only."""
        return self.k == 2

    def to_json(self) -> dict:
        d = {"k": self.k, "kind": self.kind, "dim": self.dim}
        if self.unverified:
            d["flag"] = "k=2: geometry not asserted"
        return d


def param_space(m: Rank2Matroid) -> ParamDescriptor:
    k = m.k
    return ParamDescriptor(k, "point" if k <= 3 else "M0k", max(k - 3, 0))


def set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items``, blocks in order of first element."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


@lru_cache(maxsize=None)
def _enumerate(n: int, full_dim_only: bool) -> tuple[Rank2Matroid, ...]:
    ground = list(range(1, n + 1))
    out = []
    loop_sets = [()] if full_dim_only else [c for r in range(n - 1) for c in combinations(ground, r)]
    for loops in loop_sets:
        live = [i for i in ground if i not in loops]
        for part in set_partitions(live):
            if len(part) < (3 if full_dim_only else 2):
                continue
            out.append(Rank2Matroid.make(n, part, loops))
    return tuple(sorted(out))


def enumerate_admissible(n: int, full_dim_only: bool = True) -> list[Rank2Matroid]:
    if n < 3:
        raise ValueError("n must be at least 3")
    return list(_enumerate(n, full_dim_only))
