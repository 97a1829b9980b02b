"""Exact linear programming by the two-phase simplex method.

The tableau is kept integral with a single common denominator (Edmonds'
integer pivoting), so no ``Fraction`` is created inside the pivot loop.
Bland's rule is used for both the entering and the leaving variable, which
rules out cycling on degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Sequence

from .exact import as_fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.t = rows  # constraint rows, last entry is the rhs
        self.basis = basis
        self.den = 1

    def pivot(self, r: int, c: int, obj: list[int]) -> list[int]:
        t, p, d = self.t, self.t[r][c], self.den
        pr = t[r]
        for i, row in enumerate(t):
            if i == r:
                continue
            f = row[c]
            if f == 0:
                t[i] = [x * p // d for x in row]
            else:
                t[i] = [(x * p - f * y) // d for x, y in zip(row, pr)]
        f = obj[c]
        obj = [(x * p - f * y) // d for x, y in zip(obj, pr)] if f else [x * p // d for x in obj]
        self.den = p
        self.basis[r] = c
        return obj

    def run(self, obj: list[int], allowed: int) -> str:
        """Maximise; ``obj`` holds reduced costs scaled by ``den``."""
        while True:
            c = next((j for j in range(allowed) if obj[j] > 0), None)
            if c is None:
                self.obj = obj
                return "optimal"
            best = None
            for i, row in enumerate(self.t):
                a = row[c]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                # compare rhs_i / a  with  rhs_best / a_best
                lhs = row[-1] * self.t[best][c]
                rhs = self.t[best][-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                self.obj = obj
                return "unbounded"
            obj = self.pivot(best, c, obj)


def maximize(c: Sequence, a_ub: Sequence[Sequence], b_ub: Sequence) -> LPResult:
    """Maximise ``c.x`` subject to ``a_ub x <= b_ub`` with x free."""
    n = len(c)
    m = len(a_ub)
    # x = xp - xm, slack s >= 0:  A xp - A xm + s = b
    rows: list[list[int]] = []
    for row, b in zip(a_ub, b_ub):
        fr = [as_fraction(v) for v in row] + [as_fraction(b)]
        den = reduce(lcm, (v.denominator for v in fr), 1)
        ints = [int(v * den) for v in fr]
        coeffs, rhs = ints[:-1], ints[-1]
        rows.append(coeffs + [-v for v in coeffs] + [rhs])
    nvar = 2 * n + m
    full = []
    for i, r in enumerate(rows):
        sign = -1 if r[-1] < 0 else 1
        slack = [0] * m
        slack[i] = 1
        body = r[:-1] + slack
        full.append([sign * v for v in body] + [sign * r[-1]])
    # phase one: one artificial per row, all basic
    ncols = nvar + m
    t = []
    for i, r in enumerate(full):
        art = [0] * m
        art[i] = 1
        t.append(r[:-1] + art + [r[-1]])
    tab = _Tableau(t, [nvar + i for i in range(m)])
    obj = [sum(row[j] for row in t) for j in range(nvar)] + [0] * m + [0]
    tab.run(obj, nvar)
    for i, bv in enumerate(tab.basis):
        if bv >= nvar and tab.t[i][-1] != 0:
            return LPResult("infeasible")
    # drive zero-level artificials out of the basis, drop redundant rows
    i = 0
    while i < len(tab.t):
        if tab.basis[i] >= nvar:
            c_in = next((j for j in range(nvar) if tab.t[i][j] != 0), None)
            if c_in is None:
                del tab.t[i]
                del tab.basis[i]
                continue
            if tab.t[i][c_in] < 0:
                tab.t[i] = [-v for v in tab.t[i]]
            # pivot on a possibly negative-ratio entry is fine: rhs is zero
            _pivot_any(tab, i, c_in)
        i += 1
    # phase two
    cf = [as_fraction(v) for v in c]
    cden = reduce(lcm, (v.denominator for v in cf), 1)
    ci = [int(v * cden) for v in cf]
    cost = ci + [-v for v in ci] + [0] * m + [0] * m
    obj = []
    for j in range(ncols):
        val = cost[j] * tab.den - sum(cost[bv] * row[j] for bv, row in zip(tab.basis, tab.t))
        obj.append(val)
    obj.append(0)
    status = tab.run(obj, nvar)
    if status == "unbounded":
        return LPResult("unbounded")
    y = [Fraction(0)] * ncols
    for bv, row in zip(tab.basis, tab.t):
        y[bv] = Fraction(row[-1], tab.den)
    x = tuple(y[j] - y[n + j] for j in range(n))
    value = sum(cv * xv for cv, xv in zip(cf, x))
    return LPResult("optimal", value, x)


def _pivot_any(tab: _Tableau, r: int, c: int) -> None:
    t, p, d = tab.t, tab.t[r][c], tab.den
    if p < 0:
        raise AssertionError("pivot sign")
    pr = t[r]
    for i, row in enumerate(t):
        if i == r:
            continue
        f = row[c]
        t[i] = [(x * p - f * y) // d for x, y in zip(row, pr)] if f else [x * p // d for x in row]
    tab.den = p
    tab.basis[r] = c


def feasible_strict(strict: Sequence[tuple[Sequence, object]], equal: Sequence[tuple[Sequence, object]], dim: int):
    """A point with ``a.x > b`` for each strict pair and ``c.x = e`` for each equation.

    Maximises a common slack ``s`` (capped at 1); returns None when the best
    slack is not positive, i.e. the open region is empty.
    """
    a_ub = []
    b_ub = []
    for a, b in strict:
        a_ub.append([-as_fraction(v) for v in a] + [Fraction(1)])
        b_ub.append(-as_fraction(b))
    for c, e in equal:
        row = [as_fraction(v) for v in c]
        a_ub.append(row + [Fraction(0)])
        b_ub.append(as_fraction(e))
        a_ub.append([-v for v in row] + [Fraction(0)])
        b_ub.append(-as_fraction(e))
    a_ub.append([Fraction(0)] * dim + [Fraction(1)])
    b_ub.append(Fraction(1))
    res = maximize([0] * dim + [1], a_ub, b_ub)
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:dim]
