"""Executable checks of the identities and drop laws satisfied by canonical
forms, adjoints and the valuations Omega_0 and Omega_s.

Every check returns a CheckReport; ``passed`` is None when the instance
does not meet the law's hypotheses and the check was skipped.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import mpmath
from gmpy2 import mpq

from .algebra import (
    DimensionError,
    LinearForm,
    MultiPoly,
    Q,
    RatFn,
    det_exact,
    dot,
    qvec,
    rational_sqrt,
)
from .canonical import (
    ConsistencyError,
    adjoint,
    adjoint_and_drop,
    adjoint_top,
    drop,
    dual_volume_at,
    homogenized_adjoint,
    homogenized_forms,
    omega,
    omega0,
    omega_s,
    omega_s_all,
    omega_s_at,
    simplex_forms,
)
from .polytope import (
    Face,
    Polytope,
    affine_image,
    clip,
    edge_figures,
    from_points,
    minkowski_sum,
    negate,
    polar_cells,
    product,
    restrict_to_affine_span,
    scale,
    simplex_volume,
    symmetry_tests,
    translate,
    volume,
)

FLOAT_TOL = mpmath.mpf("1e-9")


@dataclass
class CheckReport:
    law_id: str
    instance: str
    passed: Optional[bool]
    lhs: Any = None
    rhs: Any = None
    witness: Any = None
    mode: str = "exact"
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "lawId": self.law_id,
            "instance": self.instance,
            "pass": self.passed,
            "lhs": serialize(self.lhs),
            "rhs": serialize(self.rhs),
            "witness": serialize(self.witness),
            "mode": self.mode,
            "seed": self.seed,
        }


def serialize(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (MultiPoly, RatFn)):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


def describe(P: Polytope) -> str:
    if not P.full_dim:
        return f"d={P.dim} n={len(P.vertices)} affine_dim={P.affine_dim}"
    return f"d={P.dim} n={len(P.vertices)} m={P.m}"


def _skip(law, instance, reason):
    return CheckReport(law, instance, None, witness={"skipped": reason})


def drop_of(P: Polytope) -> int:
    """Drop of P taken in its affine span."""
    if P.full_dim:
        return drop(P)
    if P.affine_dim == 0:
        raise DimensionError("drop of a point is undefined")
    return drop(restrict_to_affine_span(P)[0])


# --- valuation and drop laws ----------------------------------------------------


def check_valuation_split(P: Polytope, H: LinearForm) -> CheckReport:
    law, inst = "valuation-split", describe(P)
    plus, minus = clip(P, H), clip(P, H.scaled(-1))
    if plus is None or minus is None or not plus.full_dim or not minus.full_dim:
        return _skip(law, inst, "hyperplane misses the interior")
    lhs = omega(plus).value + omega(minus).value
    rhs = omega(P).value
    return CheckReport(law, inst, lhs == rhs, lhs, rhs)


def check_drop_law(law: str, *args) -> CheckReport:
    """Drop laws: tiling, product, face, maxdrop, affine, projection,
    minkowski, parity.  Arguments are law specific (see the branches)."""
    lid = f"drop-{law}"
    if law == "tiling":
        P, pieces = args
        dp, dpieces = drop(P), [drop(Pi) for Pi in pieces]
        ok = dp >= min(dpieces)
        return CheckReport(lid, describe(P), ok, dp, min(dpieces), {"pieces": dpieces})
    if law == "product":
        P, Qp = args
        lhs = drop(product(P, Qp))
        rhs = drop(P) + drop(Qp) + 1
        return CheckReport(lid, f"{describe(P)} x {describe(Qp)}", lhs == rhs, lhs, rhs)
    if law == "face":
        P, f = args
        if not isinstance(f, Face):
            raise TypeError("face law expects a Face of P's lattice")
        k = P.dim - f.dim
        if f.dim < 1:
            return _skip(lid, describe(P), "face of dimension 0")
        F = from_points([P.vertices[i] for i in sorted(f.vertices)])
        df, dp = drop_of(F), drop(P)
        ok = df >= dp - k
        witness = {"k": k}
        if k == 1 and df == dp - 1:
            (fi,) = tuple(f.facets)
            u = P.facets[fi].u
            parallel = [i for i, G in enumerate(P.facets) if i != fi and G.u == tuple(-a for a in u)]
            witness["parallelFacets"] = parallel
            ok = ok and bool(parallel)
        return CheckReport(lid, describe(P), ok, df, dp - k, witness)
    if law == "maxdrop":
        (P,) = args
        dp = drop(P)
        return CheckReport(lid, describe(P), 0 <= dp <= P.dim - 1, dp, P.dim - 1)
    if law == "affine":
        P, S, t = args
        lhs, rhs = drop(affine_image(P, S, t)), drop(P)
        return CheckReport(lid, describe(P), lhs == rhs, lhs, rhs)
    if law == "projection":
        P, coords = args
        coords = list(coords)
        k = P.dim - len(coords)
        image = from_points([tuple(v[j] for j in coords) for v in P.vertices])
        lhs, dp = drop_of(image), drop(P)
        return CheckReport(lid, f"{describe(P)} -> {coords}", lhs >= dp - k, lhs, dp - k)
    if law == "minkowski":
        (summands,) = args
        d = summands[0].dim
        total = summands[0]
        for S in summands[1:]:
            total = minkowski_sum(total, S)
        if not total.full_dim:
            return _skip(lid, f"{len(summands)} summands", "sum is not full-dimensional")
        dims = [S.affine_dim for S in summands]
        if min(dims) < 1:
            raise DimensionError("summands must have dimension at least 1")
        drops = [drop_of(S) for S in summands]
        bound = (d - 1) - sum(di - 1 for di in dims) + sum(drops)
        lhs = drop(total)
        return CheckReport(lid, f"{len(summands)} summands", lhs >= bound, lhs, bound, {"dims": dims, "drops": drops})
    if law == "parity":
        (P,) = args
        if not symmetry_tests(P)["centrallySymmetric"]:
            return _skip(lid, describe(P), "not centrally symmetric")
        dp = drop(P)
        return CheckReport(lid, describe(P), (dp + P.dim) % 2 == 1, dp, P.dim)
    raise ValueError(f"unknown drop law {law!r}")


def check_dual_volume(P: Polytope, x) -> CheckReport:
    """Omega(P; x) equals d! vol((P - x)^polar) at an interior point x."""
    x = qvec(x)
    if not P.interior(x):
        return _skip("dual-volume", describe(P), "point is not interior")
    lhs = omega(P).evaluate(x)
    rhs = dual_volume_at(P, x)
    return CheckReport("dual-volume", describe(P), lhs == rhs, lhs, rhs, {"x": [str(c) for c in x]})


def check_zonotope_characterization(P: Polytope) -> CheckReport:
    """drop = d - 1 iff every 2-face is centrally symmetric."""
    dp = drop(P)
    combinatorial = symmetry_tests(P)["zonotopeCombinatorial"]
    return CheckReport("zonotope-characterization", describe(P), (dp == P.dim - 1) == combinatorial,
                       dp == P.dim - 1, combinatorial, {"drop": dp})


# --- classification -------------------------------------------------------------

LABEL_ZONOTOPE = "zonotope"
LABEL_SUM_ZONOTOPE = "P+(-P) zonotope, P not"
LABEL_SUM_NOT_ZONOTOPE = "P+(-P) not a zonotope"
LABEL_CS = "centrally symmetric"
LABEL_NOT_CS = "not centrally symmetric"


@dataclass(frozen=True)
class Classification:
    drop: int
    omega0_zero: bool
    label: Optional[str]
    zonotope: bool

    def to_json(self) -> dict:
        return {"drop": self.drop, "omega0Zero": self.omega0_zero, "label": self.label, "zonotope": self.zonotope}


def classify_polytope(P: Polytope) -> Classification:
    """Drop-based label, cross-checked against the geometric criteria."""
    d = P.dim
    dp = drop(P)
    w0_zero = omega0(P).is_zero()
    if w0_zero != (dp > 0):
        raise ConsistencyError("Omega_0 vanishing disagrees with the drop")
    sym = symmetry_tests(P)
    zono_drop = dp == d - 1
    if zono_drop != sym["zonotopeCombinatorial"]:
        raise ConsistencyError("drop-based and combinatorial zonotope tests disagree")
    label = None
    if d == 1:
        label = LABEL_ZONOTOPE
    elif d == 2:
        if (dp == 1) != sym["centrallySymmetric"]:
            raise ConsistencyError("polygon drop disagrees with central symmetry")
        label = LABEL_CS if dp == 1 else LABEL_NOT_CS
    elif d == 3:
        by_drop = {2: LABEL_ZONOTOPE, 1: LABEL_SUM_ZONOTOPE, 0: LABEL_SUM_NOT_ZONOTOPE}[dp]
        by_geometry = geometric_label_3d(P, sym)
        if by_drop != by_geometry:
            raise ConsistencyError(f"drop label {by_drop!r} != geometric label {by_geometry!r}")
        label = by_drop
    return Classification(dp, w0_zero, label, zono_drop)


def check_classification(P: Polytope) -> CheckReport:
    """The drop-based label agrees with the geometric one."""
    try:
        c = classify_polytope(P)
    except ConsistencyError as exc:
        return CheckReport("classification", describe(P), False, witness={"error": str(exc)})
    return CheckReport("classification", describe(P), True, c.label, c.label, c.to_json())


def geometric_label_3d(P: Polytope, sym: Optional[dict] = None) -> str:
    sym = sym or symmetry_tests(P)
    if sym["zonotopeCombinatorial"]:
        return LABEL_ZONOTOPE
    S = minkowski_sum(P, negate(P))
    return LABEL_SUM_ZONOTOPE if symmetry_tests(S)["zonotopeCombinatorial"] else LABEL_SUM_NOT_ZONOTOPE


# --- edge decomposition ---------------------------------------------------------


def _homog(u) -> MultiPoly:
    """<x, u> as a polynomial."""
    return MultiPoly.affine(0, u)


def _sq_norm_poly(d: int) -> MultiPoly:
    return MultiPoly.from_dict(d, {tuple(2 * (i == j) for j in range(d)): 1 for i in range(d)})


def _edge_cone_cells(P: Polytope) -> list:
    """[(edge, figure, cells)] with cells triangulating the polar of the edge cone."""
    lat = P.lattice
    figs = {frozenset(map(tuple, f.endpoints)): f for f in edge_figures(P)}
    out = []
    for e in lat.edges():
        i, j = sorted(e.vertices)
        fig = figs[frozenset((P.vertices[i], P.vertices[j]))]
        out.append((e, fig, polar_cells(P, e)))
    return out


def verify_edge_identity(P: Polytope, mode: str = "auto", seed: int = 0, points: int = 20) -> CheckReport:
    """adj0 |x|^2 = -sum_e (-1)^(m-m_e) l_e adj_{T_e}(pi_e x) prod_{F not containing e} <x, u_F>.

    Unit normals and edge lengths are used literally.  The edge-cone adjoint
    is (-1)^(m_e-d+1) sum_sigma |det(u_sigma, e_hat)| prod_{F in e, F not in sigma} <x, u_F>
    over a triangulation of its polar, which is |det(u_F..., e_hat)| for simple edges.
    ``mode``: exact, float, exact-raw (normalization-free exact variant), or auto.
    """
    law, inst = "edge-identity", describe(P)
    d, m = P.dim, P.m
    norms = [rational_sqrt(dot(L.u, L.u)) for L in P.facets]
    data = _edge_cone_cells(P)
    rational = all(n is not None for n in norms) and all(f.length is not None for _, f, _ in data)
    if mode == "auto":
        mode = "exact" if rational else "float"
    if mode == "exact" and not rational:
        mode = "float"
    top = adjoint_top(P)
    if mode == "exact-raw":
        return _edge_identity_raw(P, top, data, law, inst)
    if mode == "exact":
        units = [tuple(a / n for a in L.u) for L, n in zip(P.facets, norms)]
        lhs = top.scale(1 / math.prod(norms)) * _sq_norm_poly(d)
        rhs = MultiPoly.zero(d)
        forms = [_homog(u) for u in units]
        for e, fig, cells in data:
            me = len(e.facets)
            adj_T = MultiPoly.zero(d)
            for sigma in cells:
                D = abs(det_exact([list(units[k]) for k in sigma] + [list(fig.unit_direction)]))
                term = MultiPoly.constant(d, D)
                for k in e.facets:
                    if k not in sigma:
                        term = term * forms[k]
                adj_T = adj_T + term
            adj_T = adj_T.scale((-1) ** (me - d + 1))
            term = adj_T.scale(fig.length * (-1) ** (m - me))
            for k in range(m):
                if k not in e.facets:
                    term = term * forms[k]
            rhs = rhs - term
        return CheckReport(law, inst, lhs == rhs, lhs, rhs, mode="exact")
    return _edge_identity_float(P, top, data, law, inst, seed, points)


def _edge_identity_raw(P, top, data, law, inst):
    """Same identity scaled by prod |u_F|; uses raw normals and edge vectors only."""
    d, m = P.dim, P.m
    forms = [_homog(L.u) for L in P.facets]
    lhs = top * _sq_norm_poly(d)
    rhs = MultiPoly.zero(d)
    for e, fig, cells in data:
        me = len(e.facets)
        diff = [b - a for a, b in zip(*fig.endpoints)]
        sign = (-1) ** (m - me) * (-1) ** (me - d + 1)
        for sigma in cells:
            D = abs(det_exact([list(P.facets[k].u) for k in sigma] + [diff]))
            term = MultiPoly.constant(d, D * sign)
            for k in range(m):
                if k not in sigma:
                    term = term * forms[k]
            rhs = rhs - term
    return CheckReport(law, inst, lhs == rhs, lhs, rhs, mode="exact-raw")


def _edge_identity_float(P, top, data, law, inst, seed, points):
    d, m = P.dim, P.m
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    with mpmath.workdps(40):
        norms = [mpmath.sqrt(mpmath.mpf(int(dot(L.u, L.u)))) for L in P.facets]
        units = [[mpmath.mpf(int(a)) / n for a in L.u] for L, n in zip(P.facets, norms)]
        prod_norms = mpmath.fprod(norms)
        samples = []
        for _ in range(points):
            x = tuple(mpq(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(d))
            xf = [mpmath.mpf(c.numerator) / c.denominator for c in x]
            lhs = _to_mp(top.evaluate(x)) / prod_norms * mpmath.fsum(c * c for c in xf)
            forms = [mpmath.fsum(a * b for a, b in zip(u, xf)) for u in units]
            rhs = mpmath.mpf(0)
            for e, fig, cells in data:
                me = len(e.facets)
                length = mpmath.sqrt(_to_mp(fig.sq_length))
                e_hat = [(_to_mp(b) - _to_mp(a)) / length for a, b in zip(*fig.endpoints)]
                adj_T = mpmath.mpf(0)
                for sigma in cells:
                    Dm = mpmath.matrix([units[k] for k in sigma] + [e_hat])
                    term = abs(mpmath.det(Dm))
                    for k in e.facets:
                        if k not in sigma:
                            term *= forms[k]
                    adj_T += term
                adj_T *= (-1) ** (me - d + 1)
                term = (-1) ** (m - me) * length * adj_T
                for k in range(m):
                    if k not in e.facets:
                        term *= forms[k]
                rhs -= term
            scale_ = max(mpmath.mpf(1), abs(lhs), abs(rhs))
            err = abs(lhs - rhs) / scale_
            worst = max(worst, err)
            samples.append((mpmath.nstr(lhs, 15), mpmath.nstr(rhs, 15)))
    return CheckReport(law, inst, bool(worst <= FLOAT_TOL), samples[0][0], samples[0][1],
                       {"maxRelErr": mpmath.nstr(worst, 5), "points": points}, mode="float(1e-9)", seed=seed)


def _to_mp(q):
    q = Q(q)
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


# --- simplices ------------------------------------------------------------------


def _vertices_of(simplex) -> list:
    if isinstance(simplex, Polytope):
        vs = list(simplex.vertices)
    else:
        vs = [qvec(v) for v in simplex]
    if len(vs) != len(vs[0]) + 1:
        raise DimensionError("a d-simplex needs d+1 vertices")
    return vs


def simplex_identity_sides(us, hs, vs) -> tuple:
    """(lhs, rhs, dets) of det(u; h) |x|^2 = sum_{i<j} det(D_ij) <x,u_i><x,u_j>.

    D_ij has columns (u_k, 0) for k not in {i, j} and (v_i, 1), (v_j, 1).
    """
    d = len(us[0])
    n = d + 1
    A = [[us[k][r] for k in range(n)] for r in range(d)] + [[hs[k] for k in range(n)]]
    adj = det_exact(A)
    lhs = _sq_norm_poly(d).scale(adj)
    rhs = MultiPoly.zero(d)
    dets = {}
    for i, j in itertools.combinations(range(n), 2):
        cols = []
        for k in range(n):
            cols.append(list(vs[k]) + [1] if k in (i, j) else list(us[k]) + [0])
        D = det_exact([[cols[k][r] for k in range(n)] for r in range(n)])
        dets[(i, j)] = D
        if D:
            rhs = rhs + (_homog(us[i]) * _homog(us[j])).scale(D)
    return lhs, rhs, adj, dets


def verify_simplex_identity(simplex, rescale: Optional[dict] = None) -> CheckReport:
    """Exact check of the quadratic-form identity for a rational simplex.

    ``rescale`` maps facet indices to positive factors applied to (u_i, h_i).
    """
    vs = _vertices_of(simplex)
    forms = simplex_forms(vs)
    if rescale:
        forms = [L.scaled(rescale.get(i, 1)) for i, L in enumerate(forms)]
    if det_exact([list(L.u) + [L.h] for L in forms]) < 0:
        # positive orientation, so that the left side is adj times |x|^2
        forms[0], forms[1] = forms[1], forms[0]
        vs[0], vs[1] = vs[1], vs[0]
    lhs, rhs, adj, dets = simplex_identity_sides([L.u for L in forms], [L.h for L in forms], vs)
    return CheckReport("simplex-identity", f"d={len(vs) - 1}", lhs == rhs, lhs, rhs, {"adj": adj})


def verify_triangle_facts(triangle) -> CheckReport:
    """adj |x|^2 = -sum l_ij <x,u_i><x,u_j> with unit normals, and adj = Area / Circumradius."""
    law = "triangle-facts"
    vs = _vertices_of(triangle)
    if len(vs) != 3:
        raise DimensionError("triangle expected")
    forms = simplex_forms(vs)
    norms = [rational_sqrt(dot(L.u, L.u)) for L in forms]
    lengths = {}
    for i, j in itertools.combinations(range(3), 2):
        diff = [a - b for a, b in zip(vs[i], vs[j])]
        lengths[(i, j)] = dot(diff, diff)
    lens = {k: rational_sqrt(v) for k, v in lengths.items()}
    area = abs(simplex_volume(vs))
    inst = f"vertices={[tuple(map(str, v)) for v in vs]}"
    if any(n is None for n in norms) or any(v is None for v in lens.values()):
        return _triangle_float(vs, forms, lengths, area, law, inst)
    units = [L.scaled(1 / n) for L, n in zip(forms, norms)]
    adj = abs(det_exact([list(L.u) + [L.h] for L in units]))
    a, b, c = lens.values()
    circumradius = a * b * c / (4 * area)
    area_over_r = area / circumradius
    q = MultiPoly.zero(2)
    for (i, j), l in lens.items():
        q = q + (_homog(units[i].u) * _homog(units[j].u)).scale(l)
    lhs = _sq_norm_poly(2).scale(adj)
    corrected = lhs == -q
    printed = lhs == q
    ok = corrected and adj == area_over_r
    return CheckReport(law, inst, ok, {"adj": adj, "quadratic": lhs}, {"areaOverR": area_over_r, "quadratic": -q},
                       {"minusSignHolds": corrected, "plusSignHolds": printed})


def _triangle_float(vs, forms, lengths, area, law, inst):
    with mpmath.workdps(40):
        norms = [mpmath.sqrt(_to_mp(dot(L.u, L.u))) for L in forms]
        units = [([_to_mp(a) / n for a in L.u], _to_mp(L.h) / n) for L, n in zip(forms, norms)]
        adj = abs(mpmath.det(mpmath.matrix([u + [h] for u, h in units])))
        rng = random.Random(0)
        worst = mpmath.mpf(0)
        for _ in range(20):
            x = [mpmath.mpf(rng.randint(-30, 30)) / rng.randint(1, 9) for _ in range(2)]
            lhs = adj * (x[0] ** 2 + x[1] ** 2)
            rhs = -mpmath.fsum(
                mpmath.sqrt(_to_mp(l)) * mpmath.fdot(units[i][0], x) * mpmath.fdot(units[j][0], x)
                for (i, j), l in lengths.items()
            )
            worst = max(worst, abs(lhs - rhs) / max(1, abs(lhs)))
    return CheckReport(law, inst, bool(worst <= FLOAT_TOL), mpmath.nstr(adj, 15), None,
                       {"maxRelErr": mpmath.nstr(worst, 5), "areaOverR": "skipped"}, mode="float(1e-9)")


def orthoscheme_data(ells: Sequence) -> tuple:
    """(vertices, normals, heights) of the ortho-simplex with parameters l_0..l_{d+1}."""
    ells = [Q(a) for a in ells]
    d = len(ells) - 2
    if d < 1:
        raise DimensionError("need l_0..l_{d+1} with d >= 1")
    if any(a <= 0 for a in ells):
        raise ValueError("orthoscheme parameters must be positive")
    vs = [tuple(ells[k + 1] if k < i else mpq(0) for k in range(d)) for i in range(d + 1)]
    us = []
    for i in range(d + 1):
        u = [mpq(0)] * d
        if i == 0:
            u[0] = ells[0]
        elif i == d:
            u[d - 1] = -ells[d + 1]
        else:
            u[i - 1] = -ells[i + 1]
            u[i] = ells[i]
        us.append(tuple(u))
    hs = [ells[0] * ells[1]] + [mpq(0)] * d
    return vs, us, hs


def orthoscheme_dij_closed_form(ells: Sequence, i: int, j: int) -> mpq:
    ells = [Q(a) for a in ells]
    num = sum((ells[k] ** 2 for k in range(i + 1, j + 1)), mpq(0))
    return num / (ells[i] * ells[i + 1] * ells[j] * ells[j + 1]) * math.prod(ells)


def verify_orthoscheme_closed_forms(ells: Sequence) -> CheckReport:
    """adj = prod l_k and -det(D_ij) = l_ij adj_{T_ij} = closed form, for all i < j."""
    vs, us, hs = orthoscheme_data(ells)
    d = len(us) - 1
    incidence_ok = all(
        (dot(us[i], vs[k]) == hs[i]) if k != i else (dot(us[i], vs[k]) < hs[i])
        for i in range(d + 1)
        for k in range(d + 1)
    )
    lhs, rhs, adj, dets = simplex_identity_sides(us, hs, vs)
    product_ell = math.prod(Q(a) for a in ells)
    mismatches = {}
    for (i, j), D in dets.items():
        closed = orthoscheme_dij_closed_form(ells, i, j)
        if -D != closed:
            mismatches[f"{i},{j}"] = {"det": D, "closed": closed}
    ok = incidence_ok and adj == product_ell and not mismatches and lhs == rhs
    return CheckReport(
        "orthoscheme-closed-forms",
        f"ell={[str(Q(a)) for a in ells]}",
        ok,
        {"adj": adj, "dets": {f"{i},{j}": D for (i, j), D in dets.items()}},
        {"prodEll": product_ell, "closed": {f"{i},{j}": orthoscheme_dij_closed_form(ells, i, j) for i, j in dets}},
        {"incidence": incidence_ok, "mismatches": mismatches, "simplexIdentity": lhs == rhs},
    )


def check_orthoscheme_decomposition(P: Polytope, xP) -> CheckReport:
    """Signed sum of Omega over the flag ortho-simplices equals Omega(P)."""
    from .canonical import omega_simplex
    from .polytope import orthoscheme_decomposition

    cells = orthoscheme_decomposition(P, xP)
    total = RatFn.zero(P.dim)
    vol = mpq(0)
    for c in cells:
        if c.sign == 0:
            continue
        total = total + omega_simplex(simplex_forms(c.vertices)).value * c.sign
        vol += c.sign * c.volume()
    rhs = omega(P).value
    ok = total == rhs and vol == volume(P)
    return CheckReport("orthoscheme-decomposition", describe(P), ok, total, rhs,
                       {"cells": len(cells), "zeroCells": sum(c.sign == 0 for c in cells)})


# --- Omega_0 / Omega_s laws -----------------------------------------------------


def check_transformation_law(P: Polytope, S, t) -> CheckReport:
    """Omega(SP + t; Sx + t) = |det S|^-1 Omega(P; x), as rational functions."""
    S = [qvec(r) for r in S]
    t = qvec(t)
    lhs = omega(affine_image(P, S, t)).value.substitute_affine(S, t)
    rhs = omega(P).value * (1 / abs(det_exact(S)))
    return CheckReport("transformation-law", describe(P), lhs == rhs, lhs, rhs)


def check_omega0_translation(P: Polytope, t) -> CheckReport:
    lhs, rhs = omega0(translate(P, t)), omega0(P)
    return CheckReport("omega0-translation", describe(P), lhs == rhs, lhs, rhs, {"t": list(map(str, qvec(t)))})


def check_minkowski_additivity(P: Polytope, Qp: Polytope) -> CheckReport:
    lhs = omega0(minkowski_sum(P, Qp))
    rhs = omega0(P) + omega0(Qp)
    return CheckReport("omega0-minkowski", f"{describe(P)} + {describe(Qp)}", lhs == rhs, lhs, rhs)


def check_homogeneity(P: Polytope, lam, s: int = 0) -> CheckReport:
    """Omega_s(lam P) = lam^(s+1) Omega_s(P)."""
    lam = Q(lam)
    lhs = omega_s(scale(P, lam), s)
    rhs = omega_s(P, s) * lam ** (s + 1)
    return CheckReport(f"omega{s}-homogeneity", describe(P), lhs == rhs, lhs, rhs, {"lambda": lam})


def check_parity(P: Polytope) -> CheckReport:
    lhs = omega0(negate(P))
    rhs = omega0(P) * (-1) ** (P.dim + 1)
    return CheckReport("omega0-parity", describe(P), lhs == rhs, lhs, rhs)


def check_vanishing_pattern(P: Polytope, s_max: Optional[int] = None) -> CheckReport:
    """Omega_s = 0 exactly for s < drop, and Omega_drop != 0."""
    dp = drop(P)
    s_max = dp if s_max is None else s_max
    values = omega_s_all(P, s_max)
    zeros = [w.is_zero() for w in values]
    expected = [s < dp for s in range(s_max + 1)]
    return CheckReport("omega-s-vanishing", describe(P), zeros == expected, zeros, expected, {"drop": dp})


def check_homogenized_omega(P: Polytope, seed: int = 0, points: int = 5) -> CheckReport:
    """adj(x0, x) / prod(h x0 - <u, x>) = x0^(-d-1) Omega(P; x / x0) at random points."""
    rng = random.Random(seed)
    H = homogenized_adjoint(P)
    forms = homogenized_forms(P)
    W = omega(P).value
    d = P.dim
    ok = True
    for _ in range(points):
        x0 = mpq(rng.randint(1, 9), rng.randint(1, 9))
        x = tuple(mpq(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(d))
        y = (x0,) + x
        try:
            lhs = H.poly.evaluate(y) / math.prod(L(y) for L in forms)
            rhs = W.evaluate(tuple(c / x0 for c in x)) / x0 ** (d + 1)
        except ZeroDivisionError:
            continue
        ok = ok and lhs == rhs
    return CheckReport("homogenized-omega", describe(P), ok, mode="exact", seed=seed)


def _generic_point(d: int, rng: random.Random) -> tuple:
    return tuple(mpq(rng.randint(1, 97), rng.randint(2, 13)) * (1 if rng.random() < 0.5 else -1) for _ in range(d))


def polynomial_degree_on_grid(values: dict, d: int, n: int) -> int:
    """Total degree of the tensor interpolant of grid values {k-tuple: value},
    k in range(n)^d, via forward-difference (Newton) coefficients."""
    table = dict(values)
    for axis in range(d):
        for level in range(1, n):
            new = dict(table)
            for k in table:
                if k[axis] >= level:
                    prev = list(k)
                    prev[axis] -= 1
                    new[k] = table[k] - table[tuple(prev)]
            table = new
    deg = -1
    for k, v in table.items():
        if v != 0:
            deg = max(deg, sum(k))
    return deg


def verify_translation_laws(P: Polytope, s_max: int, ts: Sequence, tiling=None, seed: int = 0) -> CheckReport:
    """Omega_0 invariance, Omega_s invariance for s <= drop, polynomiality of
    degree <= s in t for larger s, and optionally the tiling equivalence.

    ``tiling`` is (pieces, shifts): P is tiled by ``pieces`` and the
    translated pieces tile another convex polytope.
    """
    rng = random.Random(seed)
    dp = drop(P)
    d = P.dim
    failures = []
    base = omega_s_all(P, min(s_max, dp))
    for t in ts:
        Pt = translate(P, t)
        if omega0(Pt) != omega0(P):
            failures.append({"omega0": list(map(str, qvec(t)))})
        if min(s_max, dp) >= 1:
            moved = omega_s_all(Pt, min(s_max, dp))
            for s in range(1, min(s_max, dp) + 1):
                if moved[s] != base[s]:
                    failures.append({"invariance": s, "t": list(map(str, qvec(t)))})
    degrees = {}
    if s_max > dp:
        adj = adjoint(P)
        while True:
            x = _generic_point(d, rng)
            if all(dot(L.u, x) != 0 for L in P.facets):
                break
        steps = [mpq(1, p) for p in (3, 5, 7, 11, 13, 17)[:d]]
        n = s_max + 2
        grid = {}
        for k in itertools.product(range(n), repeat=d):
            t = tuple(k[j] * steps[j] for j in range(d))
            grid[k] = omega_s_at(P, s_max, x, t, adj)
        for s in range(dp + 1, s_max + 1):
            deg = polynomial_degree_on_grid({k: v[s] for k, v in grid.items()}, d, n)
            degrees[s] = deg
            if deg > s:
                failures.append({"polynomialDegree": s, "found": deg})
    tiling_result = None
    if tiling is not None:
        pieces, shifts = tiling
        moved = [translate(Pi, t) for Pi, t in zip(pieces, shifts)]
        Qp = from_points([v for M in moved for v in M.vertices])
        if volume(Qp) != sum((volume(M) for M in moved), mpq(0)):
            raise ValueError("translated pieces do not tile a convex polytope")
        low = min(drop(Pi) for Pi in pieces)
        tiling_result = {"dropP": dp, "dropQ": drop(Qp), "minPieces": low}
        if (dp == low) != (tiling_result["dropQ"] == low):
            failures.append({"tiling": tiling_result})
    return CheckReport("translation-laws", describe(P), not failures, {"drop": dp, "degrees": degrees},
                       None, {"failures": failures, "tiling": tiling_result}, seed=seed)


def verify_product_adjoint(P: Polytope, Qp: Polytope) -> CheckReport:
    d1, d2 = P.dim, Qp.dim
    R = product(P, Qp)
    lhs = adjoint(R)
    rhs = adjoint(P).embed(d1 + d2, 0) * adjoint(Qp).embed(d1 + d2, d1)
    dr = adjoint_and_drop(R).drop
    expected = adjoint_and_drop(P).drop + adjoint_and_drop(Qp).drop + 1
    return CheckReport("product-adjoint", f"{describe(P)} x {describe(Qp)}", lhs == rhs and dr == expected,
                       lhs, rhs, {"drop": dr, "expectedDrop": expected})


def verify_inversion_and_halves(Z: Polytope, H: LinearForm) -> CheckReport:
    """Central halves of a centrally symmetric Z with drop > 0 (d odd) have
    Omega_0 = 0; in d = 3 their Minkowski sum is a zonotope."""
    law, inst = "inversion-halves", describe(Z)
    c = Z.centroid()
    if H(c) != 0:
        raise ValueError("hyperplane does not pass through the center")
    if Z.dim % 2 == 0:
        raise DimensionError("central halves law needs odd dimension")
    if not symmetry_tests(Z)["centrallySymmetric"] or drop(Z) == 0:
        return _skip(law, inst, "needs a centrally symmetric polytope with positive drop")
    plus, minus = clip(Z, H), clip(Z, H.scaled(-1))
    w_plus, w_minus = omega0(plus), omega0(minus)
    parity = omega0(negate(plus)) == omega0(plus) * (-1) ** (Z.dim + 1)
    ok = w_plus.is_zero() and w_minus.is_zero() and parity
    witness = {"dropPlus": drop(plus), "dropMinus": drop(minus), "parity": parity}
    if Z.dim == 3:
        label = classify_polytope(minkowski_sum(plus, minus)).label
        witness["sumLabel"] = label
        ok = ok and label == LABEL_ZONOTOPE
    return CheckReport(law, inst, ok, [w_plus, w_minus], [RatFn.zero(Z.dim)] * 2, witness)


def sign_audit() -> dict:
    """Compare both sign conventions on the standard triangle and a 3D ortho-simplex."""
    from .families import simplex

    T = verify_triangle_facts([(0, 0), (4, 0), (0, 3)])
    vs, us, hs = orthoscheme_data([1, 1, 1, 1, 1])
    _, _, _, dets = simplex_identity_sides(us, hs, vs)
    closed = {k: orthoscheme_dij_closed_form([1, 1, 1, 1, 1], *k) for k in dets}
    std = simplex(2)
    forms = simplex_forms(std.vertices)
    lhs, rhs, adj, _ = simplex_identity_sides([L.u for L in forms], [L.h for L in forms], list(std.vertices))
    return {
        "triangleMinusSign": T.witness["minusSignHolds"],
        "trianglePlusSign": T.witness["plusSignHolds"],
        "dijEqualsClosedForm": all(dets[k] == closed[k] for k in dets),
        "negDijEqualsClosedForm": all(-dets[k] == closed[k] for k in dets),
        "signedSimplexIdentity": lhs == rhs,
    }
