"""Exact rational scalars, projective pairs and small dense linear algebra.

Everything here works on ``fractions.Fraction`` or plain ``int`` values.
Matrices are lists (or tuples) of rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InvalidProjective

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class ProjPair:
    """A point (a : b) of the rational projective line, in canonical form.

    Canonical form: ``b == 1`` when b is nonzero, otherwise ``(1, 0)``.
    Build instances with :func:`proj_normalize` or :meth:`ProjPair.of`.
    """

    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, a, b) -> "ProjPair":
        return proj_normalize(a, b)

    @classmethod
    def parse(cls, text: str) -> "ProjPair":
        left, right = text.strip().strip("()").split(":")
        return proj_normalize(Fraction(left.strip()), Fraction(right.strip()))

    def integers(self) -> tuple[int, int]:
        """Primitive integer representative with the sign carried by ``a``."""
        d = lcm(self.a.denominator, self.b.denominator)
        x, y = int(self.a * d), int(self.b * d)
        g = gcd(x, y)
        return x // g, y // g

    def inverse(self) -> "ProjPair":
        return proj_normalize(self.b, self.a)

    @property
    def is_zero(self) -> bool:
        return self.a == 0

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    @property
    def is_one(self) -> bool:
        return self.a == self.b

    @property
    def is_special(self) -> bool:
        """True for the three points (0:1), (1:0), (1:1)."""
        return self.is_zero or self.is_infinity or self.is_one

    def __str__(self) -> str:
        x, y = self.integers()
        return f"({x}:{y})"

    __repr__ = __str__


def proj_normalize(a, b) -> ProjPair:
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 and b == 0:
        raise InvalidProjective("(0 : 0) is not a projective point")
    if b != 0:
        return ProjPair(a / b, Fraction(1))
    return ProjPair(Fraction(1), Fraction(0))


ZERO = ProjPair(Fraction(0), Fraction(1))
INFINITY = ProjPair(Fraction(1), Fraction(0))
ONE = ProjPair(Fraction(1), Fraction(1))
SPECIAL_POINTS = (ZERO, INFINITY, ONE)


# -- integer vectors ---------------------------------------------------------

def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [as_fraction(x) for x in vec]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Clear denominators row by row (row scaling keeps rank and row space)."""
    out = []
    for row in rows:
        fr = [as_fraction(x) for x in row]
        den = reduce(lcm, (x.denominator for x in fr), 1)
        out.append([int(x * den) for x in fr])
    return out


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


# -- elimination -------------------------------------------------------------

def matrix_rank(m: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination over the integers."""
    rows = integer_rows(m)
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, nrows):
            f = rows[r][col]
            rows[r] = [(p * rows[r][c] - f * rows[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    rows = [[as_fraction(x) for x in row] for row in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {x : m x = 0}."""
    if not m:
        assert ncols is not None
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a x = b for square nonsingular a."""
    n = len(a)
    aug = [list(map(as_fraction, row)) + [as_fraction(v)] for row, v in zip(a, b)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [rows[i][n] for i in range(n)]


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[as_fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def integer_kernel(c: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {x in Z^ncols : c x = 0} via unimodular column reduction."""
    work = [list(row) for row in c]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns = basis

    def colop(j, k, a, b, cc, d):
        # (col_j, col_k) <- (a col_j + b col_k, cc col_j + d col_k), det = +-1
        for mat in (work, u):
            for row in mat:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, cc * x + d * y

    lead = 0
    for row in work:
        if lead >= ncols:
            break
        for k in range(lead + 1, ncols):
            x, y = row[lead], row[k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(lead, k, s, t, -y // g, x // g)
        if row[lead] != 0:
            lead += 1
    return [[u[i][j] for i in range(ncols)] for j in range(lead, ncols)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
