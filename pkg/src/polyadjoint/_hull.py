"""Exact beneath-beyond convex hull on integer points.

The hull is built as a triangulated boundary with conflict lists; coplanar
simplicial facets are merged at the end, and a point is reported as a
vertex iff the normals of the merged facets through it have full rank.
"""
from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .algebra import Q, rank, rref


def int_det(M: list) -> int:
    """Bareiss determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            ri, rk = A[i], A[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def _hyperplane(pts: list) -> tuple:
    """Primitive (u, h) with <u, p> = h for the d given points in Z^d."""
    p0 = pts[0]
    d = len(p0)
    W = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    u = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in W]
        u.append((-1) ** j * int_det(minor))
    g = reduce(gcd, u, 0)
    if g == 0:
        raise ValueError("degenerate facet")
    u = tuple(a // g for a in u)
    return u, sum(a * b for a, b in zip(u, p0))


def _idot(u, p):
    return sum(a * b for a, b in zip(u, p))


def _initial_simplex(points: list, d: int) -> list:
    chosen = [0]
    base = points[0]
    rows = []
    for i, p in enumerate(points):
        if len(chosen) == d + 1:
            break
        diff = [a - b for a, b in zip(p, base)]
        if not any(diff):
            continue
        if rank(rows + [diff]) > len(rows):
            rows.append(diff)
            chosen.append(i)
    if len(chosen) < d + 1:
        raise ValueError("points are not full-dimensional")
    return chosen


def hull_full(points: Sequence[Sequence[int]]) -> tuple:
    """Convex hull of full-dimensional integer points in Z^d, d >= 2.

    Returns (vertex_indices, facets) with facets a list of primitive
    (u, h) pairs satisfying <u, x> <= h on the hull.
    """
    pts = [tuple(int(c) for c in p) for p in points]
    d = len(pts[0])
    n = len(pts)
    simplex = _initial_simplex(pts, d)
    # interior point as c_num / c_den
    c_den = d + 1
    c_num = tuple(sum(pts[i][j] for i in simplex) for j in range(d))

    facets = {}  # id -> (verts tuple, u, h)
    ridge_map = {}  # frozenset ridge -> set of facet ids
    conflicts = {}  # facet id -> set of point indices
    point_sees = {}  # point index -> set of facet ids
    next_id = [0]

    def orient(u, h):
        if _idot(u, c_num) > h * c_den:
            return tuple(-a for a in u), -h
        return u, h

    def add_facet(verts, candidates):
        u, h = orient(*_hyperplane([pts[i] for i in verts]))
        fid = next_id[0]
        next_id[0] += 1
        facets[fid] = (verts, u, h)
        for k in range(len(verts)):
            ridge = frozenset(verts[:k] + verts[k + 1:])
            ridge_map.setdefault(ridge, set()).add(fid)
        seen = set()
        for q in candidates:
            if _idot(u, pts[q]) > h:
                seen.add(q)
                point_sees.setdefault(q, set()).add(fid)
        conflicts[fid] = seen
        return fid

    def remove_facet(fid):
        verts, _, _ = facets.pop(fid)
        for k in range(len(verts)):
            ridge = frozenset(verts[:k] + verts[k + 1:])
            s = ridge_map[ridge]
            s.discard(fid)
            if not s:
                del ridge_map[ridge]
        for q in conflicts.pop(fid):
            ps = point_sees.get(q)
            if ps is not None:
                ps.discard(fid)

    in_simplex = set(simplex)
    rest = [i for i in range(n) if i not in in_simplex]
    for k in range(d + 1):
        verts = tuple(simplex[:k] + simplex[k + 1:])
        add_facet(verts, rest)

    # farthest-first order reduces interior survivors
    def spread(i):
        return sum((pts[i][j] * c_den - c_num[j]) ** 2 for j in range(d))

    order = sorted(rest, key=spread, reverse=True)
    used = set(simplex)
    for p in order:
        visible = point_sees.pop(p, set())
        if not visible:
            continue
        used.add(p)
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for k in range(len(verts)):
                ridge = frozenset(verts[:k] + verts[k + 1:])
                others = ridge_map[ridge] - {fid}
                (other,) = others
                if other not in visible:
                    horizon.append((ridge, fid, other))
        for ridge, fid, other in horizon:
            cand = (conflicts[fid] | conflicts[other]) - {p}
            horizon_cand = cand
            add_facet(tuple(sorted(ridge)) + (p,), horizon_cand)
        for fid in visible:
            remove_facet(fid)

    planes = {}
    for verts, u, h in facets.values():
        planes.setdefault((u, h), set()).update(verts)
    used = sorted(used)
    plane_list = list(planes)
    vertex_ids = []
    for i in used:
        normals = [list(u) for (u, h) in plane_list if _idot(u, pts[i]) == h]
        if len(normals) >= d and rank(normals) == d:
            vertex_ids.append(i)
    return vertex_ids, plane_list


def affine_chart(points: Sequence[Sequence]) -> tuple:
    """(base, pivot_columns, rank) of the affine span of rational points.

    Projection onto ``pivot_columns`` is injective on the affine span.
    """
    base = points[0]
    diffs = [[Q(a) - Q(b) for a, b in zip(p, base)] for p in points[1:]]
    diffs = [r for r in diffs if any(r)]
    if not diffs:
        return base, [], 0
    _, pivots = rref(diffs)
    return base, pivots, len(pivots)


def to_integer_points(points: Sequence[Sequence]) -> tuple:
    """Scale rational points by a common denominator; returns (ints, scale)."""
    den = mpz(1)
    for p in points:
        for c in p:
            den = gmpy2.lcm(den, Q(c).denominator)
    return [tuple(int(Q(c) * den) for c in p) for p in points], den


def hull(points: Sequence[Sequence]) -> tuple:
    """Exact hull of rational points.

    Returns (affine_dim, vertex_indices, facets) where facets are (u, h)
    with u integer primitive and h rational, <u, x> <= h, only when the
    points are full-dimensional (otherwise facets is None).
    """
    pts = [tuple(Q(c) for c in p) for p in points]
    uniq = {}
    for i, p in enumerate(pts):
        uniq.setdefault(p, i)
    idx = list(uniq.values())
    upts = [pts[i] for i in idx]
    d = len(upts[0])
    base, pivots, k = affine_chart(upts)
    if k == 0:
        return 0, [idx[0]], None
    chart = [tuple(p[j] for j in pivots) for p in upts]
    if k == 1:
        lo = min(range(len(chart)), key=lambda i: chart[i])
        hi = max(range(len(chart)), key=lambda i: chart[i])
        verts = sorted({idx[lo], idx[hi]})
        if d == 1:
            a, b = chart[lo][0], chart[hi][0]
            return 1, verts, [((1,), b), ((-1,), -a)]
        return 1, verts, None
    ints, scale = to_integer_points(chart)
    vids, planes = hull_full(ints)
    verts = sorted(idx[i] for i in vids)
    if k < d:
        return k, verts, None
    return d, verts, [(u, mpq(h) / scale) for u, h in planes]
