"""Coordinates (c_ij : c'_ij) of the main-stratum parameter space and the
chart-change maps between Plücker charts.

A chart M_ab (a < b) is the open set where the (a, b) minor is nonzero.
Reducing a 2 x n matrix so that columns a, b become the identity gives
local columns (z_m, w_m), and the chart's parameters are

    (c_kl : c'_kl) = (z_k w_l : z_l w_k),   k < l,  k, l not in {a, b}.

Index pairs are ordered; reading a pair backwards swaps the components,
so c_lk = c'_kl.  With that convention the cubic relations hold for every
ordering of the three indices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InvalidProjective, LiftUndefined, NotBoundary, TransitionSingular
from .exact import ProjPair, as_fraction, matrix_rank, proj_normalize

Pair = tuple[int, int]
Chart = tuple[int, int]


@dataclass(frozen=True)
class ChartPoint:
    """A point of (CP^1)^N written in the chart ``chart``; coords keyed by i < j."""

    n: int
    coords: tuple[tuple[Pair, ProjPair], ...]
    chart: Chart = (1, 2)

    @classmethod
    def make(cls, n: int, coords: Mapping[Pair, ProjPair], chart: Chart = (1, 2)) -> "ChartPoint":
        return cls(n, tuple(sorted(coords.items())), chart)

    @property
    def index_set(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if i not in self.chart]

    def as_dict(self) -> dict[Pair, ProjPair]:
        return dict(self.coords)

    def __getitem__(self, key: Pair) -> ProjPair:
        i, j = key
        d = self.as_dict()
        return d[(i, j)] if i < j else d[(j, i)].inverse()

    def a(self, i: int, j: int) -> Fraction:
        return self[(i, j)].a

    def b(self, i: int, j: int) -> Fraction:
        return self[(i, j)].b

    def relations(self) -> list[Fraction]:
        """Residuals c'_ij c_ik c'_jk - c_ij c'_ik c_jk over i < j < k (all zero on the variety)."""
        out = []
        for i, j, k in combinations(self.index_set, 3):
            out.append(self.b(i, j) * self.a(i, k) * self.b(j, k) - self.a(i, j) * self.b(i, k) * self.a(j, k))
        return out

    def satisfies_relations(self) -> bool:
        return all(r == 0 for r in self.relations())

    @property
    def is_interior(self) -> bool:
        return all(not v.is_special for _, v in self.coords)

    def inverted(self) -> "ChartPoint":
        return ChartPoint(self.n, tuple((k, v.inverse()) for k, v in self.coords), self.chart)

    def to_json(self) -> dict:
        return {"n": self.n, "chart": list(self.chart), "coords": {f"{i},{j}": str(v) for (i, j), v in self.coords}}

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for _, v in self.coords) + ")"


def num_coords(n: int) -> int:
    return comb(n - 2, 2)


# -- matrices ----------------------------------------------------------------------

Matrix = tuple[tuple[Fraction, ...], tuple[Fraction, ...]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    top, bottom = rows
    return tuple(map(as_fraction, top)), tuple(map(as_fraction, bottom))


def minor(m: Matrix, x: int, y: int) -> Fraction:
    """det[v_x v_y] for 1-based column indices."""
    return m[0][x - 1] * m[1][y - 1] - m[0][y - 1] * m[1][x - 1]


def random_main_matrix(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> Matrix:
    """Integer 2 x n matrix with every 2 x 2 minor nonzero (rejection sampling)."""
    while True:
        cols = [(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(n)]
        m = as_matrix([[c[0] for c in cols], [c[1] for c in cols]])
        if all(minor(m, x, y) != 0 for x, y in combinations(range(1, n + 1), 2)):
            return m


def plucker_to_params(m: Matrix, chart: Chart = (1, 2)) -> ChartPoint:
    """Chart coordinates of the row space of ``m``."""
    a, b = chart
    n = len(m[0])
    if minor(m, a, b) == 0:
        raise InvalidProjective(f"minor {chart} vanishes: matrix is not in chart M_{a}{b}")
    idx = [i for i in range(1, n + 1) if i not in chart]
    coords = {}
    for k, l in combinations(idx, 2):
        # z_k w_l : z_l w_k after clearing the common factor 1/D(a,b)^2
        coords[(k, l)] = proj_normalize(minor(m, k, b) * minor(m, a, l), minor(m, l, b) * minor(m, a, k))
    return ChartPoint.make(n, coords, chart)


def realize(p: ChartPoint) -> Matrix:
    """A 2 x n matrix with p as its chart (1,2) coordinates (p must be interior)."""
    if p.chart != (1, 2):
        raise ValueError("realize expects a chart (1,2) point")
    n = p.n
    top = [Fraction(1), Fraction(0), Fraction(1)]
    bottom = [Fraction(0), Fraction(1), Fraction(1)]
    for k in range(4, n + 1):
        c = p[(3, k)]
        top.append(c.b)
        bottom.append(c.a)
    return (tuple(top), tuple(bottom))


# -- lift ----------------------------------------------------------------------------

def lift(inputs: Sequence[ProjPair]) -> ChartPoint:
    """Chart (1,2) point from the free coordinates c_34, ..., c_3n.

    c_ij = (c'_3i c_3j : c_3i c'_3j) for 4 <= i < j.
    """
    n = len(inputs) + 3
    c3 = {k: inputs[k - 4] for k in range(4, n + 1)}
    coords = {(3, k): c3[k] for k in c3}
    for i, j in combinations(range(4, n + 1), 2):
        x, y = c3[i].b * c3[j].a, c3[i].a * c3[j].b
        if x == 0 and y == 0:
            locus = f"G_{i}{j}" if c3[i].is_infinity else f"G'_{i}{j}"
            raise LiftUndefined((i, j), locus)
        coords[(i, j)] = proj_normalize(x, y)
    return ChartPoint.make(n, coords)


def random_interior_point(n: int, rng: random.Random) -> ChartPoint:
    return plucker_to_params(random_main_matrix(n, rng))


# -- transition formulas from chart (1,2) ------------------------------------------------

def _pair(x: Fraction, y: Fraction, target: Chart, key: Pair) -> ProjPair:
    if x == 0 and y == 0:
        raise TransitionSingular(target, key)
    return proj_normalize(x, y)


def formula_1j(p: ChartPoint, j: int, k: int, l: int, second: bool = False) -> tuple[Fraction, Fraction]:
    """Unnormalised (d_kl, d'_kl) in chart M_1j; k == 2 gives the d_2l row."""
    a, b = p.a, p.b
    if k == 2:
        return a(j, l), a(j, l) - b(j, l)
    if second:
        return (a(k, l) * b(j, l) * (a(j, k) - b(j, k)), b(k, l) * b(j, k) * (a(j, l) - b(j, l)))
    return a(j, l) * (a(j, k) - b(j, k)), a(j, k) * (a(j, l) - b(j, l))


def formula_2j(p: ChartPoint, j: int, k: int, l: int, second: bool = False) -> tuple[Fraction, Fraction]:
    """Unnormalised (d_kl, d'_kl) in chart M_2j; k == 1 gives the d_1l row."""
    a, b = p.a, p.b
    if k == 1:
        return b(j, l), b(j, l) - a(j, l)
    if second:
        return (a(j, l) * b(k, l) * (a(j, k) - b(j, k)), a(j, k) * a(k, l) * (a(j, l) - b(j, l)))
    return b(j, l) * (a(j, k) - b(j, k)), b(j, k) * (a(j, l) - b(j, l))


def formula_ij(p: ChartPoint, i: int, j: int, k: int, l: int, second: bool = False) -> tuple[Fraction, Fraction]:
    """Unnormalised (d_kl, d'_kl) in chart M_ij, 3 <= i < j.

    For k, l >= 3 only the second closed form is correct; the first one
    (kept for comparison) differs from it by a factor -1 on the variety.
    """
    a, b = p.a, p.b
    if (k, l) == (1, 2):
        return a(i, j), b(i, j)
    if k == 1:
        return b(j, l) * (a(i, l) - b(i, l)), b(i, l) * (a(j, l) - b(j, l))
    if k == 2:
        return a(j, l) * (a(i, l) - b(i, l)), a(i, l) * (a(j, l) - b(j, l))
    if second:
        return (
            (a(j, k) - b(j, k)) * (a(i, l) - b(i, l)) * a(i, k) * b(j, l) * a(k, l),
            (a(i, k) - b(i, k)) * (a(j, l) - b(j, l)) * b(j, k) * a(i, l) * b(k, l),
        )
    return (
        (b(j, k) - a(j, k)) * (a(i, l) - b(i, l)) * b(i, k) * b(j, l),
        (a(i, k) - b(i, k)) * (a(j, l) - b(j, l)) * b(j, k) * b(i, l),
    )


def formula(p: ChartPoint, target: Chart, k: int, l: int, second: bool = False) -> tuple[Fraction, Fraction]:
    i, j = target
    if i == 1:
        return formula_1j(p, j, k, l, second)
    if i == 2:
        return formula_2j(p, j, k, l, second)
    return formula_ij(p, i, j, k, l, second)


def _from12(target: Chart, p: ChartPoint, second: bool | None = None) -> ChartPoint:
    if target == (1, 2):
        return p
    if second is None:
        second = target[0] >= 3
    idx = [x for x in range(1, p.n + 1) if x not in target]
    coords = {}
    for k, l in combinations(idx, 2):
        coords[(k, l)] = _pair(*formula(p, target, k, l, second), target, (k, l))
    return ChartPoint.make(p.n, coords, target)


def _relabel(p: ChartPoint) -> tuple[ChartPoint, dict[int, int]]:
    """Rename indices so p's chart becomes (1,2), the rest in increasing order."""
    a, b = p.chart
    order = [a, b] + p.index_set
    pi = {x: r + 1 for r, x in enumerate(order)}
    coords = {(pi[i], pi[j]): v for (i, j), v in p.coords}
    return ChartPoint.make(p.n, coords), pi


def transition(target: Chart, p: ChartPoint) -> ChartPoint:
    """Coordinates of the same stratum point in chart ``target`` (a < b).

    From chart (1,2) this applies the closed formulas directly; from any
    other chart it relabels so the source chart becomes (1,2), applies the
    formulas and maps the indices back.
    """
    target = tuple(sorted(target))
    if p.chart == target:
        return p
    if p.chart == (1, 2):
        return _from12(target, p)
    q, pi = _relabel(p)
    inv = {v: k for k, v in pi.items()}
    ta, tb = pi[target[0]], pi[target[1]]
    out = _from12((min(ta, tb), max(ta, tb)), q)
    if ta > tb:
        out = out.inverted()
    coords = {}
    for (x, y), v in out.coords:
        i, j = inv[x], inv[y]
        coords[(min(i, j), max(i, j))] = v if i < j else v.inverse()
    return ChartPoint.make(p.n, coords, target)


def all_charts(n: int) -> list[Chart]:
    return list(combinations(range(1, n + 1), 2))


def compose_check(kl: Chart, pq: Chart, p: ChartPoint) -> bool:
    """Route chart (1,2) -> kl -> pq through the formulas and compare with the matrix.

    Also checks that kl -> (1,2) returns to p.
    """
    m = realize(p)
    q = transition(kl, p)
    if q != plucker_to_params(m, tuple(sorted(kl))):
        return False
    if transition((1, 2), q) != p:
        return False
    return transition(pq, q) == plucker_to_params(m, tuple(sorted(pq)))


# -- smoothness ---------------------------------------------------------------------------

def jacobian(p: ChartPoint) -> list[list[Fraction]]:
    """Jacobian of f_ijk = c_ij c'_ik c_jk - c'_ij c_ik c'_jk in the affine chart at p.

    Each pair is dehomogenised at b (variable c, with c' = 1) when b != 0 and
    at a (variable c', with c = 1) otherwise.
    """
    keys = [k for k, _ in p.coords]
    col = {k: t for t, k in enumerate(keys)}

    def comp(i, j):
        # (value of c_ij, value of c'_ij, column, d c_ij, d c'_ij) with swap convention
        key = (i, j) if i < j else (j, i)
        v = p[key]
        dc, dcp = (1, 0) if v.b != 0 else (0, 1)
        if i < j:
            return v.a, v.b, col[key], dc, dcp
        return v.b, v.a, col[key], dcp, dc

    rows = []
    for i, j, k in combinations(p.index_set, 3):
        row = [Fraction(0)] * len(keys)
        x, xp, cx, dx, dxp = comp(i, j)
        y, yp, cy, dy, dyp = comp(i, k)
        z, zp, cz, dz, dzp = comp(j, k)
        # f = x yp z - xp y zp
        row[cx] += dx * yp * z - dxp * y * zp
        row[cy] += x * dyp * z - xp * dy * zp
        row[cz] += x * yp * dz - xp * y * dzp
        rows.append(row)
    return rows


def jacobian_rank_at(p: ChartPoint) -> int:
    if not p.satisfies_relations():
        raise ValueError("point does not satisfy the relations")
    rows = jacobian(p)
    return matrix_rank(rows) if rows else 0


def expected_rank(n: int) -> int:
    return comb(n - 3, 2)


# -- extension to the boundary -------------------------------------------------------------

@dataclass(frozen=True)
class Defined:
    point: ChartPoint


@dataclass(frozen=True)
class Collapses:
    locus: str  # e.g. "F˘_345"
    point: ChartPoint  # common image of the locus


@dataclass(frozen=True)
class Undefined:
    locus: str  # e.g. "F^_345"
    triple: tuple[int, int, int]


ExtensionVerdict = Defined | Collapses | Undefined


def evaluate_1j(j: int, p: ChartPoint) -> dict[Pair, tuple[Fraction, Fraction] | None]:
    """Chart M_1j values at p, falling back to the second formula when the first is (0, 0).

    None marks a coordinate where both formulas are indeterminate.
    """
    idx = [x for x in range(2, p.n + 1) if x != j]
    out = {}
    for k, l in combinations(idx, 2):
        x, y = formula_1j(p, j, k, l)
        if x == 0 and y == 0 and k != 2:
            x, y = formula_1j(p, j, k, l, second=True)
        out[(k, l)] = None if x == 0 and y == 0 else (x, y)
    return out


def classify_extension(j: int, p: ChartPoint) -> ExtensionVerdict:
    """How the chart change (1,2) -> (1,j) behaves at a boundary point p."""
    if p.chart != (1, 2) or not 3 <= j <= p.n:
        raise ValueError("expects a chart (1,2) point and 3 <= j <= n")
    if p.is_interior:
        raise NotBoundary("point lies in the open part (no coordinate in {0, 1, inf})")
    others = [x for x in p.index_set if x != j]
    # indeterminate values occur exactly on F^_{jkl}
    vals = evaluate_1j(j, p)
    for (k, l), v in sorted(vals.items()):
        if v is None:
            t = tuple(sorted((j, k, l)))
            return Undefined("F^_" + "".join(map(str, t)), t)
    image = ChartPoint.make(p.n, {key: proj_normalize(*v) for key, v in vals.items()}, (1, j))
    for l, q in combinations(others, 2):
        if p.b(j, l) == 0 and p.b(j, q) == 0:
            t = tuple(sorted((j, l, q)))
            return Collapses("F˘_" + "".join(map(str, t)), image)
    return Defined(image)


def boundary_points(n: int, rng: random.Random, count: int) -> list[ChartPoint]:
    """Boundary points of the compactified variety, built by degenerating columns.

    Each point is the chart (1,2) record of a matrix where some columns are
    made parallel to e1, e2, (1,1) or to each other, so that at least one
    coordinate lands in {0, 1, inf}.
    """
    out: list[ChartPoint] = []
    seen = set()
    specials = [(1, 0), (0, 1), (1, 1)]
    while len(out) < count:
        cols = [(Fraction(rng.randint(1, 9)), Fraction(rng.randint(1, 9))) for _ in range(n - 3)]
        # lift coordinates are the inputs c_3k = (w_k : z_k)
        ins = [proj_normalize(w, z) for z, w in cols]
        how = rng.randrange(3)
        pos = list(range(n - 3))
        rng.shuffle(pos)
        if how == 0:
            # one input at a special value
            s = specials[rng.randrange(3)]
            ins[pos[0]] = proj_normalize(*s)
        elif how == 1:
            # two inputs equal (columns parallel)
            if n - 3 < 2:
                continue
            ins[pos[1]] = ins[pos[0]]
        else:
            # two inputs at (possibly different) special values
            if n - 3 < 2:
                continue
            ins[pos[0]] = proj_normalize(*specials[rng.randrange(3)])
            ins[pos[1]] = proj_normalize(*specials[rng.randrange(3)])
        try:
            p = lift(ins)
        except LiftUndefined:
            continue
        if p.is_interior or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def pattern_point(n: int, values: Mapping[Pair, ProjPair]) -> ChartPoint:
    """Chart (1,2) point from explicit values for every pair (checked against the relations)."""
    p = ChartPoint.make(n, dict(values))
    if len(p.coords) != num_coords(n) or not p.satisfies_relations():
        raise ValueError("values do not define a point of the variety")
    return p


def map_inputs(fn: Callable[[ProjPair], ProjPair], ins: Iterable[ProjPair]) -> list[ProjPair]:
    return [fn(x) for x in ins]


# -- the boundary case analysis for the chart change (1,2) -> (1,j) ------------------------

WITNESS_VALUES = ("1:0", "0:1", "1:1", "2:1", "3:1", "-1:1")


def case_witnesses(n: int, values: Sequence[str] = WITNESS_VALUES) -> list[ChartPoint]:
    """Every boundary point obtained by lifting inputs drawn from ``values``."""
    from itertools import product

    pool = [ProjPair.parse(v) for v in values]
    out = []
    for ins in product(pool, repeat=n - 3):
        try:
            p = lift(list(ins))
        except LiftUndefined:
            continue
        if not p.is_interior:
            out.append(p)
    return out


def _d(vals: dict, i: int, j: int):
    if (i, j) in vals:
        return vals[(i, j)]
    v = vals[(j, i)]
    return None if v is None else (v[1], v[0])


def _is0(x):
    return x is not None and x[0] == 0


def _is0p(x):
    return x is not None and x[1] == 0


def _is1(x):
    return x is not None and x[0] == x[1]


def _same(x, y):
    return x is not None and y is not None and x[0] * y[1] == x[1] * y[0]


# One entry per stated conclusion: (hypothesis on c, needed d-pairs, conclusion on d).
# For the "k!=j" group k, l, p are distinct indices other than j; for the
# other group the indices are j, l, p with l, p != j.  Conclusion "h2",
# (d_lp) = (d_jp), is not listed: chart (1,j) has no coordinate with index j.
CASE_BULLETS = {
    "a1": (lambda c, k, l, p: c(k, l).b == 0, lambda k, l, p: [(k, l)],
           lambda d, k, l, p: _is0p(d(k, l))),
    "a2": (lambda c, k, l, p: c(k, l).b == 0, lambda k, l, p: [(k, p), (l, p)],
           lambda d, k, l, p: _is0p(d(k, p)) or _is0(d(l, p))),
    "b1": (lambda c, k, l, p: c(k, l).a == 0, lambda k, l, p: [(k, l)],
           lambda d, k, l, p: _is0(d(k, l))),
    "b2": (lambda c, k, l, p: c(k, l).a == 0, lambda k, l, p: [(k, p), (l, p)],
           lambda d, k, l, p: _is0(d(k, p)) or _is0p(d(l, p))),
    "c1": (lambda c, k, l, p: c(k, l).is_one, lambda k, l, p: [(k, l)],
           lambda d, k, l, p: _is1(d(k, l))),
    "c2": (lambda c, k, l, p: c(k, l).is_one, lambda k, l, p: [(k, p), (l, p)],
           lambda d, k, l, p: _same(d(l, p), d(k, p))),
    "d": (lambda c, j, l, p: c(j, l).a == 0 and c(j, p).a == 0, lambda j, l, p: [(2, l), (2, p)],
          lambda d, j, l, p: _is0(d(2, l)) and _is0(d(2, p))),
    "e": (lambda c, j, l, p: c(j, l).a == 0 and c(l, p).b == 0, lambda j, l, p: [(2, l), (l, p)],
          lambda d, j, l, p: _is0(d(2, l)) and _is0p(d(l, p))),
    "f": (lambda c, j, l, p: c(j, l).b == 0 and c(j, p).b == 0, lambda j, l, p: [(2, l), (2, p), (l, p)],
          lambda d, j, l, p: _is1(d(2, l)) and _is1(d(2, p)) and _is1(d(l, p))),
    "g1": (lambda c, j, l, p: c(j, l).b == 0 and c(l, p).a == 0, lambda j, l, p: [(2, l)],
           lambda d, j, l, p: _is1(d(2, l))),
    "g2": (lambda c, j, l, p: c(j, l).b == 0 and c(l, p).a == 0, lambda j, l, p: [(l, p)],
           lambda d, j, l, p: _is0(d(l, p))),
    "h1": (lambda c, j, l, p: c(j, l).is_one, lambda j, l, p: [(2, l)],
           lambda d, j, l, p: _is0p(d(2, l))),
}


@dataclass
class BulletReport:
    name: str
    checked: int = 0
    failures: int = 0
    example: dict | None = None

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.failures == 0

    def to_json(self) -> dict:
        return {"bullet": self.name, "checked": self.checked, "failures": self.failures, "passed": self.passed, "counterexample": self.example}


def check_case_bullets(ns: Iterable[int] = (5, 6)) -> dict[str, BulletReport]:
    """Test each bullet on every witness, chart index j and index assignment satisfying its hypothesis.

    Assignments where a needed d-coordinate is indeterminate (the F^ loci)
    are skipped, as the case analysis excludes them.
    """
    from itertools import permutations

    reports = {name: BulletReport(name) for name in CASE_BULLETS}
    for n in ns:
        for p in case_witnesses(n):
            for j in range(3, n + 1):
                vals = evaluate_1j(j, p)
                others = [x for x in range(3, n + 1) if x != j]

                def c(x, y):
                    return p[(x, y)]

                def d(x, y):
                    return _d(vals, x, y)

                for name, (hyp, needs, concl) in CASE_BULLETS.items():
                    first = name[0] in "abc"
                    combos = permutations(others, 3) if first else ((j, l, q) for l, q in permutations(others, 2))
                    for k, l, q in combos:
                        if not hyp(c, k, l, q):
                            continue
                        if any(d(x, y) is None for x, y in needs(k, l, q)):
                            continue
                        rep = reports[name]
                        rep.checked += 1
                        if not concl(d, k, l, q):
                            rep.failures += 1
                            if rep.example is None:
                                rep.example = {"n": n, "point": str(p), "j": j, "indices": [k, l, q] if first else [l, q],
                                               "image": {f"{x}{y}": str(v) for (x, y), v in sorted(vals.items()) if v is not None}}
    return reports
