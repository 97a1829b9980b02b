"""Exact convex polytopes given by vertices.

Facets come from the double description method applied to the homogenised
point cone; everything is computed in a local coordinate system of the
affine hull and lifted back to R^n.  Facet inequalities are stored as
``normal . x >= offset`` with a primitive integer normal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .exact import as_fraction, det, dot, integer_kernel, integer_rows, matrix_rank, nullspace, primitive, rref
from .lp import feasible_strict

Point = tuple[Fraction, ...]
Facet = tuple[tuple[int, ...], Fraction]


# -- double description -------------------------------------------------------

def extreme_rays(rows: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : A x >= 0}.

    ``rows`` must have full column rank.  Rays are primitive integer vectors.
    """
    a = integer_rows(rows)
    m = len(a[0])
    # pick m independent rows to start from a simplicial cone
    chosen: list[int] = []
    for i in range(len(a)):
        if matrix_rank([a[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == m:
                break
    if len(chosen) < m:
        raise ValueError("cone is not pointed")
    b = [a[i] for i in chosen]
    rays = []
    for k in range(m):
        # column k of b^{-1}: solve b r = e_k
        rows_aug = [list(map(Fraction, b[i])) + [Fraction(int(i == k))] for i in range(m)]
        red, _ = rref(rows_aug)
        rays.append(primitive([red[i][m] for i in range(m)]))
    # tight-set bitmasks over processed rows
    order = chosen + [i for i in range(len(a)) if i not in chosen]
    zsets = [0] * m
    for pos, i in enumerate(chosen):
        for k, r in enumerate(rays):
            if dot(a[i], r) == 0:
                zsets[k] |= 1 << pos
    for pos in range(m, len(order)):
        row = a[order[pos]]
        vals = [dot(row, r) for r in rays]
        plus = [k for k, v in enumerate(vals) if v > 0]
        minus = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in plus + zero]
        new_z = [zsets[k] for k in plus] + [zsets[k] | (1 << pos) for k in zero]
        for p in plus:
            for q in minus:
                common = zsets[p] & zsets[q]
                if bin(common).count("1") < m - 2:
                    continue
                if any(k != p and k != q and (zsets[k] & common) == common for k in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                r = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(primitive(r))
                new_z.append(common | (1 << pos))
        rays, zsets = new_rays, new_z
    return sorted(set(rays))


# -- polytopes ----------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points (V-description plus caches)."""

    vertices: tuple[Point, ...]
    dim: int
    facets: tuple[Facet, ...]
    equations: tuple[Facet, ...]
    pivots: tuple[int, ...] = field(repr=False)

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        xs, den = _clear(x)
        if any(dot(c, xs) != b * den for c, b in self.equations):
            return False
        if strict:
            return all(dot(nv, xs) > b * den for nv, b in self.facets)
        return all(dot(nv, xs) >= b * den for nv, b in self.facets)

    def barycenter(self) -> Point:
        k = len(self.vertices)
        return tuple(sum(col) / k for col in zip(*self.vertices))

    @cached_property
    def int_vertices(self) -> tuple[tuple[list[int], int], ...]:
        """Vertices as (integer vector, denominator) pairs for fast evaluation."""
        return tuple(_clear(v) for v in self.vertices)

    def tight(self, facet: Facet) -> frozenset[Point]:
        nv, b = facet
        return frozenset(v for v, (xs, den) in zip(self.vertices, self.int_vertices) if dot(nv, xs) == b * den)

    @cached_property
    def volume(self) -> Fraction:
        return normalized_volume(self)


def _clear(x: Sequence) -> tuple[list[int], int]:
    """Integer vector X and positive D with x = X / D."""
    fr = [as_fraction(v) for v in x]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in fr], den


def _affine_frame(pts: list[Point]) -> tuple[list[int], int]:
    base = pts[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    if not diffs:
        return [], 0
    red, piv = rref(diffs)
    return piv, len(red)


def hull(points: Iterable[Sequence]) -> Polytope:
    """Convex hull with irredundant vertices, facets and affine equations."""
    pts = sorted({tuple(as_fraction(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    base = pts[0]
    piv, d = _affine_frame(pts)
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    eq_basis = nullspace(diffs) if diffs else nullspace([], n)
    equations = tuple(sorted((primitive(c), dot(primitive(c), base)) for c in eq_basis))
    if d == 0:
        return Polytope((pts[0],), 0, (), equations, ())
    local = [[p[j] for j in piv] for p in pts]
    cone = [[Fraction(1)] + y for y in local]
    facets = []
    local_facets = []
    for ray in extreme_rays(cone):
        h0, h = ray[0], ray[1:]
        normal = [0] * n
        for j, c in zip(piv, h):
            normal[j] = c
        facets.append((tuple(normal), Fraction(-h0)))
        local_facets.append(h)
    verts = []
    for p, y in zip(pts, local):
        tight_normals = [h for (nv, b), h in zip(facets, local_facets) if dot(nv, p) == b]
        if len(tight_normals) >= d and matrix_rank(tight_normals) == d:
            verts.append(p)
    return Polytope(tuple(verts), d, tuple(sorted(facets)), equations, tuple(piv))


# -- volume -------------------------------------------------------------------

def _lattice_coords(p: Polytope) -> list[tuple[Fraction, ...]]:
    """Coordinates of the vertices in a Z-basis of the affine hull's lattice."""
    n = p.ambient
    eqs = [list(c) for c, _ in p.equations]
    basis = integer_kernel(eqs, n) if eqs else [[int(i == j) for j in range(n)] for i in range(n)]
    assert len(basis) == p.dim
    base = p.vertices[0]
    # express v - base in the basis; pick dim independent coordinates
    cols = [list(col) for col in zip(*basis)]  # n rows, dim columns
    _, piv = rref([list(r) for r in basis])
    sub = [[basis[k][j] for k in range(p.dim)] for j in piv]
    out = []
    for v in p.vertices:
        rhs = [v[j] - base[j] for j in piv]
        aug = [list(map(Fraction, row)) + [r] for row, r in zip(sub, rhs)]
        red, _ = rref(aug)
        lam = tuple(red[i][p.dim] for i in range(p.dim))
        # the representation must reproduce all coordinates
        assert all(sum(lam[k] * cols[j][k] for k in range(p.dim)) == v[j] - base[j] for j in range(n))
        out.append(lam)
    return out


def _triangulate(p: Polytope) -> list[tuple[int, ...]]:
    """Pulling triangulation as tuples of vertex indices.

    Works on vertex-facet incidences only: the facets of a face F are the
    inclusion-maximal sets among the proper nonempty F & G, G a facet.
    """
    nv = len(p.vertices)
    index = {v: i for i, v in enumerate(p.vertices)}
    top = [sum(1 << index[v] for v in p.tight(f)) for f in p.facets]
    cache: dict[int, list[tuple[int, ...]]] = {}

    def faces_of(face: int) -> list[int]:
        cands = {face & g for g in top if face & g and face & g != face}
        return [c for c in cands if not any(c != d and c & d == c for d in cands)]

    def tri(face: int) -> list[tuple[int, ...]]:
        if face in cache:
            return cache[face]
        if face & (face - 1) == 0:
            out = [(face.bit_length() - 1,)]
        else:
            v0 = (face & -face).bit_length() - 1
            out = []
            for sub in faces_of(face):
                if not sub >> v0 & 1:
                    out.extend((v0,) + s for s in tri(sub))
        cache[face] = out
        return out

    return tri((1 << nv) - 1)


def normalized_volume(p: Polytope) -> Fraction:
    """Lattice-normalised volume in the lattice of the affine hull (unimodular simplex = 1)."""
    if p.dim == 0:
        return Fraction(1)
    lam = _lattice_coords(p)
    simplices = _triangulate(p)
    total = Fraction(0)
    for s in simplices:
        o = lam[s[0]]
        m = [[x - y for x, y in zip(lam[i], o)] for i in s[1:]]
        total += abs(det(m))
    return total


# -- relative position ----------------------------------------------------------

def _check_full(p: Polytope, q: Polytope) -> None:
    if p.ambient != q.ambient or p.dim != q.dim or p.equations != q.equations:
        raise DimensionMismatch("polytopes do not share a full-dimensional affine hull")
    if p.dim != p.ambient - len(p.equations) or p.dim < 1:
        raise DimensionMismatch("polytope is not full-dimensional")


def interiors_intersect(p: Polytope, q: Polytope) -> bool:
    """True iff some point lies strictly inside both polytopes (relative interiors)."""
    _check_full(p, q)
    for a, b in ((p, q), (q, p)):
        for nv, off in a.facets:
            if all(dot(nv, xs) <= off * den for xs, den in b.int_vertices):
                return False
    if q.contains(p.barycenter(), strict=True) or p.contains(q.barycenter(), strict=True):
        return True
    return feasible_strict(p.facets + q.facets, p.equations, p.ambient) is not None


def vertices_from_h(ineqs: Sequence[Facet], equations: Sequence[Facet], n: int) -> list[Point]:
    """Vertices of the bounded polyhedron {x : N.x >= b, C.x = e} in R^n."""
    # parametrise the affine subspace C.x = e by x = x0 + sum t_k k_k
    if equations:
        aug = [list(map(Fraction, c)) + [as_fraction(e)] for c, e in equations]
        red, piv = rref(aug)
        if n in piv:
            return []
        x0 = [Fraction(0)] * n
        for row, j in zip(red, piv):
            x0[j] = row[n]
        dirs = nullspace([list(map(Fraction, c)) for c, _ in equations])
    else:
        x0 = [Fraction(0)] * n
        dirs = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m = len(dirs)
    # homogenised cone in (s, t): N.(x0 s + D t) - b s >= 0, s >= 0
    rows = [[Fraction(1)] + [Fraction(0)] * m]
    for nv, b in ineqs:
        rows.append([dot(nv, x0) - as_fraction(b)] + [dot(nv, dvec) for dvec in dirs])
    if matrix_rank(rows) < m + 1:
        raise ValueError("polyhedron is unbounded")
    out = set()
    for ray in extreme_rays(rows):
        s = ray[0]
        if s == 0:
            continue
        t = [Fraction(c, s) for c in ray[1:]]
        out.add(tuple(x0[j] + sum(t[k] * dirs[k][j] for k in range(m)) for j in range(n)))
    return sorted(out)


def face_closure(p: Polytope, s: frozenset[Point]) -> frozenset[Point]:
    """Vertex set of the smallest face of p containing the vertex set s."""
    if not s:
        return frozenset()
    face = frozenset(p.vertices)
    for facet in p.facets:
        t = p.tight(facet)
        if s <= t:
            face &= t
    return face


def is_face_to_face(p: Polytope, q: Polytope) -> bool:
    """True iff p and q meet in a common face of both (possibly empty)."""
    common = frozenset(p.vertices) & frozenset(q.vertices)
    inter = vertices_from_h(p.facets + q.facets, p.equations, p.ambient)
    if not set(inter) <= common:
        return False
    return face_closure(p, common) == common and face_closure(q, common) == common
