"""Exact convex polytopes: paired V/H representations, face lattices,
triangulations, products, Minkowski sums, affine images, zonotopes,
symmetry tests, edge data and signed orthoscheme decompositions."""
from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from . import _hull
from .algebra import (
    DimensionError,
    LinearForm,
    Q,
    dot,
    det_exact,
    mat_inverse,
    nullspace,
    qvec,
    rank,
    rational_sqrt,
    solve,
    transpose,
)

MAX_DIM = 6


class RepresentationError(ValueError):
    pass


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(qvec(v) for v in self.vertices))
        if self.dim < 1 or not self.vertices:
            raise RepresentationError("need dim >= 1 and at least one vertex")
        if any(len(v) != self.dim for v in self.vertices):
            raise DimensionError("vertex of wrong dimension")


@dataclass(frozen=True)
class HPolytope:
    """Intersection of half-spaces h - <u, x> >= 0 (u outward)."""

    dim: int
    facets: tuple

    def __post_init__(self):
        if any(L.nvars != self.dim for L in self.facets):
            raise DimensionError("facet form of wrong dimension")


@dataclass(frozen=True)
class SignedSimplex:
    vertices: tuple
    sign: int = 1

    def volume(self) -> mpq:
        """Unsigned Euclidean volume."""
        return abs(simplex_volume(self.vertices))


@dataclass(frozen=True)
class EdgeFigure:
    endpoints: tuple
    sq_length: mpq
    length: Optional[mpq]
    containing_facets: frozenset
    unit_direction: Optional[tuple]


@dataclass(frozen=True)
class Face:
    dim: int
    vertices: frozenset
    facets: frozenset


class FaceLattice:
    """All nonempty faces of a full-dimensional polytope, grouped by dimension."""

    def __init__(self, faces_by_dim: dict, top: Face):
        self.by_dim = faces_by_dim
        self.top = top
        self._index = {f.vertices: f for fs in faces_by_dim.values() for f in fs}
        self._index[top.vertices] = top
        self._parents = None
        self._lock = threading.Lock()

    def faces(self, k: int) -> list:
        return self.by_dim.get(k, [])

    def f_vector(self) -> tuple:
        return tuple(len(self.faces(k)) for k in range(self.top.dim))

    def face_of(self, vertex_set) -> Face:
        return self._index[frozenset(vertex_set)]

    def edges(self) -> list:
        return self.faces(1)

    def children(self, f: Face) -> list:
        """Faces of dimension f.dim - 1 contained in f."""
        return [g for g in self.faces(f.dim - 1) if g.vertices < f.vertices]

    def parents(self, f: Face) -> list:
        """Faces of dimension f.dim + 1 containing f (the top face for facets)."""
        if f.dim + 1 == self.top.dim:
            return [self.top]
        return [g for g in self.faces(f.dim + 1) if f.facets > g.facets]


def _build_lattice(P: "Polytope") -> FaceLattice:
    d = P.dim
    inc = P.incidence
    normals = [list(L.u) for L in P.facets]
    all_v = frozenset(range(len(P.vertices)))
    seen = {}
    queue = [all_v]
    seen_set = {all_v}
    while queue:
        nxt = []
        for f in queue:
            for G in inc:
                g = f & G
                if g and g not in seen_set:
                    seen_set.add(g)
                    nxt.append(g)
        queue = nxt
    seen_set.discard(all_v)
    by_dim = {}
    for vs in seen_set:
        fac = frozenset(i for i, G in enumerate(inc) if vs <= G)
        k = d - rank([normals[i] for i in fac])
        by_dim.setdefault(k, []).append(Face(k, vs, fac))
    for k in by_dim:
        by_dim[k].sort(key=lambda f: sorted(f.vertices))
    top = Face(d, all_v, frozenset())
    return FaceLattice(by_dim, top)


class Polytope:
    """A convex polytope with exact vertices and primitive outward facet forms.

    Full-dimensional instances carry facets L_F = h_F - <u_F, x> >= 0 with
    integer normals of content 1; lower-dimensional instances carry only
    vertices.  Instances are immutable; the face lattice is built lazily
    under a lock.
    """

    def __init__(self, dim: int, vertices, facets=(), full_dim: bool = True, affine_dim: Optional[int] = None):
        if dim > MAX_DIM:
            raise SizeError(f"dimension {dim} exceeds the limit {MAX_DIM}")
        self.dim = dim
        self.vertices = tuple(sorted(tuple(qvec(v)) for v in vertices))
        self.full_dim = full_dim
        self.affine_dim = dim if full_dim else affine_dim
        if full_dim:
            fs = [L.primitive()[1] for L in facets]
            self.facets = tuple(sorted(fs, key=lambda L: (L.u, L.h)))
            self.incidence = tuple(
                frozenset(i for i, v in enumerate(self.vertices) if L(v) == 0) for L in self.facets
            )
        else:
            self.facets = ()
            self.incidence = ()
        self._lattice = None
        self._lock = threading.Lock()

    # --- basic properties ---------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.facets)

    @property
    def vrep(self) -> VPolytope:
        return VPolytope(self.dim, self.vertices)

    @property
    def hrep(self) -> HPolytope:
        return HPolytope(self.dim, self.facets)

    @property
    def lattice(self) -> FaceLattice:
        if self._lattice is None:
            with self._lock:
                if self._lattice is None:
                    if not self.full_dim:
                        raise RepresentationError("face lattice needs a full-dimensional polytope")
                    self._lattice = _build_lattice(self)
        return self._lattice

    def centroid(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum((v[j] for v in self.vertices), mpq(0)) / n for j in range(self.dim))

    def contains(self, x) -> bool:
        return all(L(x) >= 0 for L in self.facets)

    def interior(self, x) -> bool:
        return self.full_dim and all(L(x) > 0 for L in self.facets)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.dim, self.vertices, self.facets, self.full_dim) == (
            other.dim,
            other.vertices,
            other.facets,
            other.full_dim,
        )

    def __hash__(self):
        return hash((self.dim, self.vertices, self.facets))

    def __repr__(self):
        kind = f"m={self.m}" if self.full_dim else f"affine_dim={self.affine_dim}"
        return f"Polytope(d={self.dim}, n={len(self.vertices)}, {kind})"

    def validate(self):
        """Check that both representations describe the same set."""
        if not self.full_dim:
            return
        for L in self.facets:
            if any(L(v) < 0 for v in self.vertices):
                raise RepresentationError("vertex violates a facet inequality")
        for L, inc in zip(self.facets, self.incidence):
            pts = [self.vertices[i] for i in inc]
            if not pts or _affine_rank(pts) != self.dim - 1:
                raise RepresentationError("facet not supported by d affinely independent vertices")


def _affine_rank(pts) -> int:
    base = pts[0]
    return rank([[a - b for a, b in zip(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0


def from_points(points: Sequence[Sequence]) -> Polytope:
    """Convex hull of rational points (not required to be vertices)."""
    pts = [qvec(p) for p in points]
    if not pts:
        raise RepresentationError("empty point set")
    d = len(pts[0])
    if d > MAX_DIM:
        raise SizeError(f"dimension {d} exceeds the limit {MAX_DIM}")
    k, vids, planes = _hull.hull(pts)
    verts = [pts[i] for i in vids]
    if planes is None:
        return Polytope(d, verts, full_dim=False, affine_dim=k)
    facets = [LinearForm(h, tuple(mpq(a) for a in u)) for u, h in planes]
    return Polytope(d, verts, facets, full_dim=True)


def from_inequalities(dim: int, forms: Sequence[LinearForm]) -> Polytope:
    """Polytope {x : L(x) >= 0}; redundant forms are dropped."""
    forms = list(forms)
    if dim > MAX_DIM:
        raise SizeError(f"dimension {dim} exceeds the limit {MAX_DIM}")
    if any(L.nvars != dim for L in forms):
        raise DimensionError("form of wrong dimension")
    points = set()
    for combo in itertools.combinations(range(len(forms)), dim):
        A = [list(forms[i].u) for i in combo]
        if det_exact(A) == 0:
            continue
        x = solve(A, [forms[i].h for i in combo])
        if all(L(x) >= 0 for L in forms):
            points.add(x)
    if not points:
        raise RepresentationError("empty or unbounded inequality system")
    P = from_points(sorted(points))
    if not P.full_dim:
        raise RepresentationError("inequality system has empty interior")
    given = {L.primitive()[1] for L in forms}
    if any(F not in given for F in P.facets):
        raise RepresentationError("inequality system is unbounded")
    return P


def dual_convert(rep) -> Polytope:
    """Populate both representations from a VPolytope or HPolytope."""
    if isinstance(rep, VPolytope):
        P = from_points(rep.vertices)
        if len(P.vertices) != len(set(rep.vertices)):
            raise RepresentationError("listed point is not a vertex")
        return P
    if isinstance(rep, HPolytope):
        P = from_inequalities(rep.dim, rep.facets)
        return P
    raise TypeError("expected VPolytope or HPolytope")


def restrict_to_affine_span(P: Polytope) -> tuple:
    """(Q, pivots) with Q the full-dimensional image of P under the
    coordinate projection onto ``pivots`` (injective on aff(P))."""
    base, pivots, k = _hull.affine_chart(list(P.vertices))
    if k == 0:
        raise RepresentationError("a point has no full-dimensional chart")
    return from_points([tuple(v[j] for j in pivots) for v in P.vertices]), pivots


# --- volumes and triangulations -----------------------------------------------


def simplex_volume(vertices) -> mpq:
    """Signed volume det(v_i - v_0) / d!."""
    v0 = vertices[0]
    d = len(v0)
    M = [[a - b for a, b in zip(v, v0)] for v in vertices[1:]]
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    return det_exact(M) / fact


def _pulling(lattice: FaceLattice, choose) -> list:
    memo = {}

    def tri(f: Face):
        key = f.vertices
        if key in memo:
            return memo[key]
        if f.dim == 0:
            res = [(next(iter(f.vertices)),)]
        else:
            v = choose(f)
            res = []
            for g in lattice.children(f):
                if v in g.vertices:
                    continue
                res.extend((v,) + c for c in tri(g))
        memo[key] = res
        return res

    return tri(lattice.top)


def triangulate(P: Polytope, seed: Optional[int] = None) -> list:
    """Pulling triangulation; the apex of every face is its lexicographically
    smallest vertex, or a seeded random vertex when ``seed`` is given."""
    if not P.full_dim:
        raise RepresentationError("triangulation needs a full-dimensional polytope")
    if seed is None:
        choose = lambda f: min(f.vertices)
    else:
        rng = random.Random(seed)
        choose = lambda f: rng.choice(sorted(f.vertices))
    cells = _pulling(P.lattice, choose)
    return [SignedSimplex(tuple(P.vertices[i] for i in sorted(c)), 1) for c in cells]


def volume(P: Polytope) -> mpq:
    if not P.full_dim:
        return mpq(0)
    return sum((s.volume() for s in triangulate(P)), mpq(0))


def polar_cells(P: Polytope, start: Optional[Face] = None) -> list:
    """Facet-index tuples of a pulling triangulation of the polar polytope.

    Built from P's face lattice in reverse: a face f of P corresponds to
    the polar face spanned by the facets containing f.  With ``start`` set
    to a face f, the result triangulates the polar of the tangent cone at f
    (cells of size d - dim f).
    """
    lat = P.lattice
    memo = {}
    top = lat.top

    def parents_of(f):
        if f is None:
            return lat.faces(0)
        return lat.parents(f)

    def tri(f):
        key = None if f is None else f.vertices
        if key in memo:
            return memo[key]
        fac = range(P.m) if f is None else f.facets
        if f is not None and f.dim == P.dim - 1:
            res = [(next(iter(f.facets)),)]
        else:
            i = min(fac)
            res = []
            for g in parents_of(f):
                if g is top or i in g.facets:
                    continue
                res.extend((i,) + c for c in tri(g))
        memo[key] = res
        return res

    return tri(start)


# --- constructions --------------------------------------------------------------


def product(P: Polytope, Qp: Polytope) -> Polytope:
    if not (P.full_dim and Qp.full_dim):
        raise RepresentationError("product needs full-dimensional factors")
    d1, d2 = P.dim, Qp.dim
    verts = [v + w for v in P.vertices for w in Qp.vertices]
    facets = [LinearForm(L.h, L.u + (mpq(0),) * d2) for L in P.facets]
    facets += [LinearForm(L.h, (mpq(0),) * d1 + L.u) for L in Qp.facets]
    return Polytope(d1 + d2, verts, facets)


def minkowski_sum(P: Polytope, Qp: Polytope) -> Polytope:
    if P.dim != Qp.dim:
        raise DimensionError("summands live in different dimensions")
    return from_points({tuple(a + b for a, b in zip(v, w)) for v in P.vertices for w in Qp.vertices})


def affine_image(P: Polytope, S: Sequence[Sequence], t: Sequence) -> Polytope:
    S = [qvec(r) for r in S]
    t = qvec(t)
    if det_exact(S) == 0:
        raise ValueError("singular transformation")
    verts = [tuple(dot(row, v) + ti for row, ti in zip(S, t)) for v in P.vertices]
    if not P.full_dim:
        return Polytope(P.dim, verts, full_dim=False, affine_dim=P.affine_dim)
    Sinv_T = transpose(mat_inverse(S))
    facets = []
    for L in P.facets:
        u2 = tuple(dot(row, L.u) for row in Sinv_T)
        facets.append(LinearForm(L.h + dot(u2, t), u2))
    return Polytope(P.dim, verts, facets)


def translate(P: Polytope, t: Sequence) -> Polytope:
    d = P.dim
    return affine_image(P, [[int(i == j) for j in range(d)] for i in range(d)], t)


def scale(P: Polytope, lam) -> Polytope:
    d = P.dim
    return affine_image(P, [[Q(lam) if i == j else 0 for j in range(d)] for i in range(d)], [0] * d)


def negate(P: Polytope) -> Polytope:
    return scale(P, -1)


def segment(a: Sequence, b: Sequence) -> Polytope:
    return from_points([a, b])


def zonotope_from_generators(gens: Sequence[Sequence]) -> Polytope:
    gens = [qvec(g) for g in gens]
    if not gens:
        raise RepresentationError("no generators")
    d = len(gens[0])
    Z = from_points([(mpq(0),) * d])
    for g in gens:
        Z = minkowski_sum(Z, segment((mpq(0),) * d, g))
    return Z


def clip(P: Polytope, H: LinearForm) -> Polytope:
    """P intersected with {H >= 0}."""
    kept = [v for v in P.vertices if H(v) >= 0]
    pts = set(kept)
    pairs = [sorted(e.vertices) for e in P.lattice.edges()]
    if P.dim == 1 and len(P.vertices) == 2:
        pairs = [(0, 1)]
    for pair in pairs:
        a, b = (P.vertices[i] for i in pair)
        ha, hb = H(a), H(b)
        if (ha > 0 and hb < 0) or (ha < 0 and hb > 0):
            lam = ha / (ha - hb)
            pts.add(tuple(x + lam * (y - x) for x, y in zip(a, b)))
    if not pts:
        return None
    return from_points(sorted(pts))


# --- symmetry -------------------------------------------------------------------


def is_centrally_symmetric(vertices) -> bool:
    vs = set(vertices)
    n = len(vertices)
    d = len(vertices[0])
    c2 = tuple(sum((v[j] for v in vertices), mpq(0)) * 2 / n for j in range(d))
    return all(tuple(c - x for c, x in zip(c2, v)) in vs for v in vertices)


def symmetry_tests(P: Polytope) -> dict:
    cs = is_centrally_symmetric(P.vertices)
    if P.dim <= 2:
        zono = cs
    else:
        zono = all(is_centrally_symmetric([P.vertices[i] for i in f.vertices]) for f in P.lattice.faces(2))
    return {"centrallySymmetric": cs, "zonotopeCombinatorial": zono}


# --- edges ----------------------------------------------------------------------


def edge_figures(P: Polytope) -> list:
    out = []
    for e in P.lattice.edges():
        i, j = sorted(e.vertices)
        a, b = P.vertices[i], P.vertices[j]
        diff = tuple(y - x for x, y in zip(a, b))
        sq = dot(diff, diff)
        for F in e.facets:
            if dot(P.facets[F].u, diff) != 0:
                raise RepresentationError("facet normal not orthogonal to its edge")
        length = rational_sqrt(sq)
        unit = tuple(c / length for c in diff) if length is not None else None
        out.append(EdgeFigure((a, b), sq, length, e.facets, unit))
    return out


# --- orthoscheme decomposition --------------------------------------------------


def project_to_face(P: Polytope, face: Face, x: Sequence) -> tuple:
    """Orthogonal projection of x onto the affine hull of a face."""
    if face.dim == P.dim:
        return tuple(x)
    normals = [P.facets[i].u for i in face.facets]
    _, pivots = _row_basis(normals)
    N = [normals[i] for i in pivots]
    p = P.vertices[next(iter(face.vertices))]
    # x - N^T lam with N (x - N^T lam - p) = 0
    G = [[dot(a, b) for b in N] for a in N]
    rhs = [dot(a, [xi - pi for xi, pi in zip(x, p)]) for a in N]
    lam = solve(G, rhs)
    return tuple(xi - sum(l * a[j] for l, a in zip(lam, N)) for j, xi in enumerate(x))


def _row_basis(rows):
    from .algebra import rref as _rref

    _, piv = _rref(transpose([list(r) for r in rows]))
    return None, piv


def complete_flags(P: Polytope) -> list:
    """All chains P = F_d > F_{d-1} > ... > F_0."""
    lat = P.lattice
    flags = []

    def down(chain):
        f = chain[-1]
        if f.dim == 0:
            flags.append(list(chain))
            return
        for g in lat.children(f):
            down(chain + [g])

    down([lat.top])
    return flags


def orthoscheme_decomposition(P: Polytope, xP: Sequence) -> list:
    """Signed simplices conv{x_F} over complete flags.

    The sign is (-1)^k with k counting flag steps where x_{F_{i}} lies on
    the outer side of F_{i-1} within F_i; degenerate cells get sign 0.
    """
    xP = qvec(xP)
    cache = {}

    def proj(f):
        if f.vertices not in cache:
            cache[f.vertices] = project_to_face(P, f, xP)
        return cache[f.vertices]

    cells = []
    for flag in complete_flags(P):
        pts = [proj(f) for f in flag]
        k = 0
        degenerate = False
        for upper, lower in zip(flag, flag[1:]):
            xu, xl = proj(upper), proj(lower)
            direction = tuple(a - b for a, b in zip(xu, xl))
            normal = _outward_in_face(P, upper, lower)
            s = dot(direction, normal)
            if s == 0:
                degenerate = True
            elif s > 0:
                k += 1
        if degenerate or simplex_volume(pts) == 0:
            cells.append(SignedSimplex(tuple(pts), 0))
        else:
            cells.append(SignedSimplex(tuple(pts), -1 if k % 2 else 1))
    return cells


def _outward_in_face(P: Polytope, upper: Face, lower: Face) -> tuple:
    """Outward normal of ``lower`` inside aff(upper), projected to the
    direction space of aff(upper)."""
    any_extra = next(i for i in lower.facets if i not in upper.facets)
    u = P.facets[any_extra].u
    if upper.dim == P.dim:
        return u
    N = [P.facets[i].u for i in upper.facets]
    _, piv = _row_basis(N)
    N = [N[i] for i in piv]
    G = [[dot(a, b) for b in N] for a in N]
    lam = solve(G, [dot(a, u) for a in N])
    return tuple(uj - sum(l * a[j] for l, a in zip(lam, N)) for j, uj in enumerate(u))
