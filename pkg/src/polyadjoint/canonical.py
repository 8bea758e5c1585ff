"""Canonical forms, adjoints, degree drops and the homogenized valuations
Omega_0 and Omega_s of convex polytopes.

Facet forms are the primitive integer forms stored on the Polytope.  The
canonical form does not depend on the normal lengths, so everything except
the adjoint's numeric value and the facet residue is computed on these raw
forms directly.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from .algebra import (
    DimensionError,
    LinearForm,
    MultiPoly,
    Q,
    RatFn,
    UnsupportedPolyhedronError,
    det_exact,
    dot,
    nullspace,
    qvec,
    rational_sqrt,
    ratfn,
    ratfn_add,
    ratfn_degree,
    series_coefficients_in_marker,
)
from .polytope import Polytope, from_points, polar_cells, simplex_volume, triangulate


class ConsistencyError(RuntimeError):
    pass


class SingularSimplexError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalForm:
    value: RatFn
    ambient_dim: int
    facet_count: int

    def evaluate(self, x):
        return self.value.evaluate(x)

    def degree(self):
        return ratfn_degree(self.value)

    def to_json(self) -> dict:
        out = self.value.to_json()
        out.update({"d": self.ambient_dim, "m": self.facet_count})
        return out


@dataclass(frozen=True)
class AdjointReport:
    adjoint: MultiPoly
    expected_degree: int
    actual_degree: int
    drop: int
    normalization: str = "raw"

    def to_json(self) -> dict:
        return {
            "adjoint": self.adjoint.to_json(),
            "expectedDegree": self.expected_degree,
            "actualDegree": self.actual_degree,
            "drop": self.drop,
            "normalization": self.normalization,
        }


@dataclass(frozen=True)
class HomAdjoint:
    poly: MultiPoly
    degree: int

    def dehomogenize(self) -> MultiPoly:
        n = self.poly.nvars
        one = MultiPoly.constant(n - 1, 1)
        return self.poly.substitute([one] + [MultiPoly.var(n - 1, i) for i in range(n - 1)])

    def x0_power(self) -> int:
        return self.poly.max_power_of_first()


@dataclass(frozen=True)
class FacetRestriction:
    form: CanonicalForm
    facet: int
    eliminated: int
    norm_sq: mpq
    scale_pending: bool


# --- simplices and cones --------------------------------------------------------


def omega_simplex(forms: Sequence[LinearForm]) -> CanonicalForm:
    """|det(u; h)| / prod L_i for the simplex cut out by d+1 forms."""
    d = forms[0].nvars
    if len(forms) != d + 1:
        raise DimensionError("a d-simplex needs d+1 forms")
    D = det_exact([list(L.u) + [L.h] for L in forms])
    if D == 0 or not _bounds_simplex(forms):
        raise SingularSimplexError("forms do not bound a full-dimensional simplex")
    return CanonicalForm(ratfn(MultiPoly.constant(d, abs(D)), forms), d, d + 1)


def _bounds_simplex(forms: Sequence[LinearForm]) -> bool:
    """The normals admit a strictly positive dependency lam with sum lam_i h_i > 0."""
    d = forms[0].nvars
    kernel = nullspace([[L.u[r] for L in forms] for r in range(d)], d + 1)
    if len(kernel) != 1:
        return False
    lam = kernel[0]
    if all(c < 0 for c in lam):
        lam = [-c for c in lam]
    return all(c > 0 for c in lam) and sum(c * L.h for c, L in zip(lam, forms)) > 0


def omega_cone(forms: Sequence[LinearForm]) -> CanonicalForm:
    """(-1)^d |det u| / prod <x, u_i> for the cone {<x, u_i> <= 0}."""
    d = forms[0].nvars
    if len(forms) != d or any(L.h != 0 for L in forms):
        raise DimensionError("a simplicial cone needs d homogeneous forms")
    D = det_exact([list(L.u) for L in forms])
    if D == 0:
        raise SingularSimplexError("dependent cone normals")
    # prod <x,u_i> = (-1)^d prod L_i, so the sign cancels
    return CanonicalForm(ratfn(MultiPoly.constant(d, abs(D)), forms), d, d)


def simplex_forms(vertices: Sequence[Sequence]) -> list:
    """Outward facet forms of a full-dimensional simplex (form i avoids vertex i)."""
    vs = [qvec(v) for v in vertices]
    d = len(vs[0])
    out = []
    for i in range(d + 1):
        others = vs[:i] + vs[i + 1:]
        base = others[0]
        rows = [[a - b for a, b in zip(p, base)] for p in others[1:]]
        u = []
        for j in range(d):
            minor = [r[:j] + r[j + 1:] for r in rows]
            u.append((-1) ** j * det_exact(minor))
        h = dot(u, base)
        L = LinearForm(h, tuple(u))
        if L(vs[i]) < 0:
            L = L.scaled(-1)
        elif L(vs[i]) == 0:
            raise SingularSimplexError("affinely dependent vertices")
        out.append(L)
    return out


# --- adjoints -------------------------------------------------------------------


def _cell_sum(P: Polytope, forms: Sequence[LinearForm]) -> MultiPoly:
    """sum over polar cells sigma of |det(u_sigma; h_sigma)| prod_{F not in sigma} forms[F].

    ``forms`` may be the facet forms or their homogeneous parts.  The product
    over the complement is obtained by dividing the full product along the
    shared prefixes of the cell list.
    """
    d, m = P.dim, P.m
    cells = sorted(polar_cells(P))
    full = MultiPoly.constant(d, 1)
    for L in forms:
        full = full.mul_affine(L.h, [-a for a in L.u])
    acc = {}
    stack = {(): full}

    def prefix_poly(prefix):
        if prefix in stack:
            return stack[prefix]
        parent = prefix_poly(prefix[:-1])
        L = forms[prefix[-1]]
        q = parent.divide_affine(L.h, [-a for a in L.u])
        if q is None:
            raise ConsistencyError("facet form does not divide the running product")
        stack[prefix] = q
        return q

    prev = ()
    for cell in cells:
        # drop cached prefixes no longer shared
        common = 0
        while common < min(len(prev), len(cell)) and prev[common] == cell[common]:
            common += 1
        for k in range(common + 1, len(prev) + 1):
            stack.pop(prev[:k], None)
        prev = cell
        D = abs(det_exact([list(P.facets[i].u) + [P.facets[i].h] for i in cell]))
        if D == 0:
            raise ConsistencyError("degenerate polar cell")
        poly = prefix_poly(cell)
        for k, c in poly._t.items():
            v = acc.get(k)
            acc[k] = c * D if v is None else v + c * D
    return MultiPoly(d, {k: c for k, c in acc.items() if c})


def adjoint(P: Polytope) -> MultiPoly:
    """Numerator of Omega(P) over the product of the stored facet forms."""
    return _cell_sum(P, P.facets)


def adjoint_top(P: Polytope) -> MultiPoly:
    """Degree m-d-1 homogeneous part of the adjoint."""
    return _cell_sum(P, [L.homogeneous_part() for L in P.facets])


def omega(P: Polytope, method: str = "polar") -> CanonicalForm:
    """Canonical form of P.

    ``polar`` sums simplex volumes over a triangulation of the polar body;
    ``triangulation`` sums omega_simplex over a triangulation of P itself.
    """
    if not P.full_dim:
        return CanonicalForm(RatFn.zero(P.dim), P.dim, 0)
    if method == "polar":
        value = ratfn(adjoint(P), P.facets)
    elif method == "triangulation":
        value = omega_by_triangulation(P)
    else:
        raise ValueError(f"unknown method {method!r}")
    _check_denominator(P, value)
    return CanonicalForm(value, P.dim, P.m)


def omega_by_triangulation(P: Polytope, seed: Optional[int] = None) -> RatFn:
    pieces = [omega_simplex(simplex_forms(s.vertices)).value for s in triangulate(P, seed)]
    while len(pieces) > 1:
        nxt = [ratfn_add(pieces[i], pieces[i + 1]) for i in range(0, len(pieces) - 1, 2)]
        if len(pieces) % 2:
            nxt.append(pieces[-1])
        pieces = nxt
    return pieces[0]


def _check_denominator(P: Polytope, value: RatFn):
    expected = sorted(L.canonical()[1].coefficient_vector() for L in P.facets)
    got = sorted(L.coefficient_vector() for L, k in value.den for _ in range(k))
    if expected != got:
        raise ConsistencyError("reduced denominator differs from the facet forms")


def adjoint_and_drop(P: Polytope) -> AdjointReport:
    if not P.full_dim:
        raise DimensionError("drop is defined for full-dimensional polytopes only")
    adj = adjoint(P)
    expected = P.m - P.dim - 1
    actual = adj.degree()
    if adj.is_zero():
        raise ConsistencyError("zero adjoint for a full-dimensional polytope")
    rep = AdjointReport(adj, expected, actual, expected - actual, "raw")
    return rep


def adjoint_top_at(P: Polytope, v: Sequence):
    """Value of the degree m-d-1 adjoint part at v, without expanding it."""
    values = [-dot(L.u, v) for L in P.facets]
    total = mpq(0)
    for cell in polar_cells(P):
        D = abs(det_exact([list(P.facets[i].u) + [P.facets[i].h] for i in cell]))
        term = D
        inside = set(cell)
        for i, val in enumerate(values):
            if i not in inside:
                term *= val
        total += term
    return total


def drop(P: Polytope, probes: int = 3) -> int:
    """Adjoint degree drop.

    A nonzero value of the top-degree part at a probe point certifies drop 0;
    otherwise the adjoint is expanded symbolically.
    """
    if not P.full_dim:
        raise DimensionError("drop is defined for full-dimensional polytopes only")
    rng = random.Random(0)
    for _ in range(probes):
        v = [mpq(rng.randint(-997, 997)) for _ in range(P.dim)]
        if adjoint_top_at(P, v) != 0:
            return 0
    top = adjoint_top(P)
    if not top.is_zero():
        return 0
    return adjoint_and_drop(P).drop


def unit_adjoint(P: Polytope) -> Optional[MultiPoly]:
    """Adjoint for unit facet normals, when every normal has rational length."""
    scale = mpq(1)
    for L in P.facets:
        r = rational_sqrt(dot(L.u, L.u))
        if r is None:
            return None
        scale *= r
    return adjoint(P).scale(1 / scale)


def homogenized_adjoint(P: Polytope) -> HomAdjoint:
    deg = P.m - P.dim - 1
    return HomAdjoint(adjoint(P).homogenize(deg), deg)


def homogenized_forms(P: Polytope) -> list:
    """h_F x0 - <u_F, x> as forms over (x0, x)."""
    return [LinearForm(0, (-L.h,) + L.u) for L in P.facets]


def omega0(P: Polytope) -> RatFn:
    """(-1)^m adj^0 / prod <x, u_F>, i.e. adj^0 over the homogeneous facet forms."""
    if not P.full_dim:
        return RatFn.zero(P.dim)
    return ratfn(adjoint_top(P), [L.homogeneous_part() for L in P.facets])


def omega_s_all(P: Polytope, s_max: int) -> list:
    """[Omega_0, ..., Omega_{s_max}]."""
    if not P.full_dim:
        return [RatFn.zero(P.dim)] * (s_max + 1)
    H = homogenized_adjoint(P)
    return series_coefficients_in_marker(H.poly, homogenized_forms(P), s_max)


def omega_s(P: Polytope, s: int) -> RatFn:
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s == 0:
        return omega0(P)
    return omega_s_all(P, s)[s]


def omega_s_at(P: Polytope, s_max: int, x: Sequence, t: Optional[Sequence] = None,
               adj: Optional[MultiPoly] = None) -> list:
    """Values of Omega_0..Omega_{s_max} of P + t at a fixed point x.

    Expands the univariate function
    x0 -> adj(x0, x - x0 t) / prod((h_F + <u_F, t>) x0 - <u_F, x>)
    as an exact power series in x0.
    """
    x = qvec(x)
    d, m = P.dim, P.m
    t = qvec(t) if t is not None else (mpq(0),) * d
    if adj is None:
        adj = adjoint(P)
    deg = m - d - 1
    n = s_max + 1

    def mul(a, b):
        out = [mpq(0)] * n
        for i, ai in enumerate(a):
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return out

    cache = {}

    def power(j, e):
        key = (j, e)
        if key not in cache:
            base = [x[j], -t[j]] + [mpq(0)] * (n - 2) if n > 1 else [x[j]]
            cache[key] = [mpq(1)] + [mpq(0)] * (n - 1) if e == 0 else mul(power(j, e - 1), base[:n])
        return cache[key]

    num = [mpq(0)] * n
    for exps, c in adj.terms():
        shift = deg - sum(exps)
        if shift >= n:
            continue
        poly = [c] + [mpq(0)] * (n - 1)
        for j, e in enumerate(exps):
            if e:
                poly = mul(poly, power(j, e))
        for k in range(n - shift):
            num[k + shift] += poly[k]
    series = num
    for L in P.facets:
        beta = -dot(L.u, x)
        if beta == 0:
            raise ZeroDivisionError("x lies on a homogeneous facet hyperplane")
        ratio = -(L.h + dot(L.u, t)) / beta
        inv = [ratio ** k / beta for k in range(n)]
        series = mul(series, inv)
    return series


# --- residues and the dual-volume oracle ---------------------------------------


def facet_restriction(P: Polytope, F: int, eliminate: Optional[int] = None) -> FacetRestriction:
    """Residue of Omega(P) along facet F, in the coordinates left after
    eliminating one variable along the facet hyperplane."""
    L = P.facets[F]
    d = P.dim
    if eliminate is None:
        eliminate = max(range(d), key=lambda j: (L.u[j] != 0, -j))
    k = eliminate
    if L.u[k] == 0:
        raise ValueError("cannot eliminate a coordinate the facet does not involve")
    # x_k = (h - sum_{j != k} u_j x_j) / u_k as an affine map from R^{d-1}
    A, b = [], []
    for i in range(d):
        row = [mpq(0)] * (d - 1)
        if i == k:
            for jj, j in enumerate(jdx for jdx in range(d) if jdx != k):
                row[jj] = -L.u[j] / L.u[k]
            b.append(L.h / L.u[k])
        else:
            row[i if i < k else i - 1] = mpq(1)
            b.append(mpq(0))
        A.append(row)
    others = [G for i, G in enumerate(P.facets) if i != F]
    images = [MultiPoly.affine(b[i], A[i]) for i in range(d)]
    num = adjoint(P).substitute(images)
    factors = []
    for G in others:
        G2 = G.substitute_affine(A, b)
        if G2 is None:
            c = G.h - dot(G.u, b)
            num = num.scale(1 / c)
        else:
            factors.append(G2)
    norm_sq = dot(L.u, L.u)
    r = rational_sqrt(norm_sq)
    pending = r is None
    if not pending:
        num = num.scale(1 / r)
    value = ratfn(num, factors)
    return FacetRestriction(CanonicalForm(value, d - 1, len(value.den)), F, k, norm_sq, pending)


def dual_volume_at(P: Polytope, x: Sequence) -> mpq:
    """d! vol((P - x)^polar) from an independent hull of the polar vertices."""
    x = qvec(x)
    if not P.interior(x):
        raise ValueError("point is not interior")
    verts = [tuple(a / L(x) for a in L.u) for L in P.facets]
    D = from_points(verts)
    total = mpq(0)
    for s in triangulate(D):
        total += abs(simplex_volume(s.vertices))
    return total * math.factorial(P.dim)
