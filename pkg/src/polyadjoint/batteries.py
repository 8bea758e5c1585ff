"""Seeded random-instance batteries, one per law, shared by the CLI and scripts.

Instance ``i`` of a battery run with seed ``s`` draws from ``Random(s * 100003 + i)``,
so every report can be regenerated from its recorded seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from gmpy2 import mpq

from . import theorems as th
from .algebra import LinearForm, det_exact
from .canonical import drop
from .families import (
    cube,
    pythagorean_corpus,
    random_non_zonotope,
    random_polygon,
    random_polytope,
    random_rational,
    random_zonotope,
    rhombic_dodecahedron,
    simplex,
)
from .polytope import from_points, minkowski_sum, symmetry_tests


def instance_seed(seed: int, i: int) -> int:
    return seed * 100003 + i


def random_simplex_vertices(d: int, rng: random.Random) -> list:
    while True:
        vs = [tuple(random_rational(rng) * rng.randint(1, 5) for _ in range(d)) for _ in range(d + 1)]
        if det_exact([[a - b for a, b in zip(v, vs[0])] for v in vs[1:]]) != 0:
            return vs


def random_interior_point(P, rng: random.Random) -> tuple:
    """Random convex combination of the vertices with positive weights."""
    ws = [mpq(rng.randint(1, 9)) for _ in P.vertices]
    total = sum(ws)
    return tuple(sum(w * v[j] for w, v in zip(ws, P.vertices)) / total for j in range(P.dim))


def random_direction(d: int, rng: random.Random) -> tuple:
    while True:
        u = tuple(mpq(rng.randint(-5, 5)) for _ in range(d))
        if any(u):
            return u


def random_vector(d: int, rng: random.Random) -> tuple:
    return tuple(random_rational(rng) * rng.randint(1, 4) for _ in range(d))


def random_matrix(d: int, rng: random.Random) -> list:
    while True:
        S = [[mpq(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        if det_exact(S) != 0:
            return S


def central_plane(P, rng: random.Random) -> LinearForm:
    c = P.centroid()
    u = random_direction(P.dim, rng)
    return LinearForm(sum(a * b for a, b in zip(u, c)), u)


PYTHAGOREAN_TRIPLES = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]


def random_pythagorean_triangle(rng: random.Random) -> list:
    a, b, _ = rng.choice(PYTHAGOREAN_TRIPLES)
    k = mpq(rng.randint(1, 6), rng.randint(1, 3))
    t = random_vector(2, rng)
    base = [(0, 0), (a * k, 0), (0, b * k)]
    if rng.random() < 0.5:
        base = [(x, -y) for x, y in base]
    return [tuple(mpq(c) + s for c, s in zip(v, t)) for v in base]


# --- per-law instance builders ---------------------------------------------------
# Each builder takes (rng, d, mode) and returns a CheckReport.


def _simplex_identity(rng, d, mode):
    rescale = {rng.randrange(d + 1): mpq(rng.randint(1, 7), rng.randint(1, 3))} if rng.random() < 0.5 else None
    return th.verify_simplex_identity(random_simplex_vertices(d, rng), rescale)


def _edge_identity(rng, d, mode):
    if mode == "exact":
        corpus = pythagorean_corpus()
        name, P = corpus[rng.randrange(len(corpus))]
        r = th.verify_edge_identity(P, mode="exact")
        r.instance = name
        return r
    return th.verify_edge_identity(random_polytope(d, rng, n_max=10), mode="float", seed=rng.randrange(10**6))


def _triangle_facts(rng, d, mode):
    return th.verify_triangle_facts(random_pythagorean_triangle(rng))


def _orthoscheme(rng, d, mode):
    ells = [mpq(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(d + 2)]
    return th.verify_orthoscheme_closed_forms(ells)


def _orthoscheme_decomposition(rng, d, mode):
    P = random_polytope(d, rng, n_max=7)
    return th.check_orthoscheme_decomposition(P, random_interior_point(P, rng))


def _dual_volume(rng, d, mode):
    P = random_polytope(d, rng, n_max=8)
    return th.check_dual_volume(P, random_interior_point(P, rng))


def _valuation_split(rng, d, mode):
    P = random_polytope(d, rng, n_max=8)
    return th.check_valuation_split(P, central_plane(P, rng))


def _omega0_translation(rng, d, mode):
    return th.check_omega0_translation(random_polytope(d, rng, n_max=8), random_vector(d, rng))


def _minkowski(rng, d, mode):
    return th.check_minkowski_additivity(random_polytope(d, rng, n_max=6), random_polytope(d, rng, n_max=6))


def _homogeneity(rng, d, mode):
    P = random_polytope(d, rng, n_max=7)
    return th.check_homogeneity(P, mpq(rng.randint(1, 9), rng.randint(1, 4)), rng.randint(0, 2))


def _parity(rng, d, mode):
    return th.check_parity(random_polytope(d, rng, n_max=8))


def _transformation(rng, d, mode):
    return th.check_transformation_law(random_polytope(d, rng, n_max=7), random_matrix(d, rng), random_vector(d, rng))


def _vanishing(rng, d, mode):
    P = random_zonotope(d, rng, k_max=d + 1) if rng.random() < 0.5 else random_polytope(d, rng, n_max=7)
    return th.check_vanishing_pattern(P)


def _homogenized(rng, d, mode):
    return th.check_homogenized_omega(random_polytope(d, rng, n_max=7), seed=rng.randrange(10**6))


def _translation(rng, d, mode):
    P = random_polytope(d, rng, n_max=6) if rng.random() < 0.5 else random_zonotope(d, rng, k_max=d + 1)
    ts = [random_vector(d, rng) for _ in range(2)]
    return th.verify_translation_laws(P, min(2, d), ts, seed=rng.randrange(10**6))


def _product_adjoint(rng, d, mode):
    d1 = rng.randint(1, max(1, d - 1))
    d2 = max(1, d - d1)
    return th.verify_product_adjoint(random_polytope(d1, rng, n_max=5), random_polytope(d2, rng, n_max=5))


def _inversion_halves(rng, d, mode):
    d = 3 if d % 2 == 0 else d
    choices = [cube(d), random_zonotope(d, rng, k_max=d + 1)]
    if d == 3:
        choices.append(rhombic_dodecahedron())
    Z = choices[rng.randrange(len(choices))]
    return th.verify_inversion_and_halves(Z, central_plane(Z, rng))


def _classification(rng, d, mode):
    return th.check_classification(random_polytope(d, rng, n_max=8))


def _zonotope_characterization(rng, d, mode):
    P = random_zonotope(d, rng) if rng.random() < 0.5 else random_non_zonotope(d, rng)
    return th.check_zonotope_characterization(P)


def _polygon_symmetry(rng, d, mode):
    P = random_polygon(rng, centrally_symmetric=rng.random() < 0.5)
    cs = symmetry_tests(P)["centrallySymmetric"]
    dp = drop(P)
    return th.CheckReport("polygon-symmetry", th.describe(P), (dp == 1) == cs, dp, int(cs))


def _drop_product(rng, d, mode):
    d1 = rng.randint(1, max(1, d - 1))
    return th.check_drop_law("product", random_polytope(d1, rng, n_max=6), random_polytope(max(1, d - d1), rng, n_max=6))


def _drop_face(rng, d, mode):
    P = random_zonotope(d, rng, k_max=d + 1) if rng.random() < 0.5 else random_polytope(d, rng, n_max=8)
    k = rng.randint(1, d - 1) if d > 1 else 1
    faces = [f for f in P.lattice.faces(d - k) if f.dim >= 1]
    if not faces:
        return th._skip("drop-face", th.describe(P), "no face of positive dimension")
    return th.check_drop_law("face", P, faces[rng.randrange(len(faces))])


def _drop_maxdrop(rng, d, mode):
    return th.check_drop_law("maxdrop", random_polytope(d, rng, n_max=8))


def _drop_affine(rng, d, mode):
    return th.check_drop_law("affine", random_polytope(d, rng, n_max=7), random_matrix(d, rng), random_vector(d, rng))


def _drop_projection(rng, d, mode):
    P = random_zonotope(d, rng, k_max=d + 1)
    k = rng.randint(1, d - 1) if d > 1 else 0
    coords = sorted(rng.sample(range(d), d - k))
    return th.check_drop_law("projection", P, coords)


def _drop_minkowski(rng, d, mode):
    summands = []
    for _ in range(rng.randint(2, 3)):
        k = rng.randint(1, d)
        while True:
            pts = [random_vector(d, rng) for _ in range(k + rng.randint(1, 2))]
            S = from_points(pts)
            if S.affine_dim >= 1:
                break
        summands.append(S)
    return th.check_drop_law("minkowski", summands)


def _drop_parity(rng, d, mode):
    if rng.random() < 0.5:
        P = random_zonotope(d, rng, k_max=d + 1)
    else:
        P = random_polytope(d, rng, n_max=5)
        P = minkowski_sum(P, th.negate(P))
    return th.check_drop_law("parity", P)


def _drop_tiling(rng, d, mode):
    P = random_polytope(d, rng, n_max=7)
    H = central_plane(P, rng)
    pieces = [th.clip(P, H), th.clip(P, H.scaled(-1))]
    if any(p is None or not p.full_dim for p in pieces):
        return th._skip("drop-tiling", th.describe(P), "degenerate split")
    return th.check_drop_law("tiling", P, pieces)


def _sign_audit(rng, d, mode):
    audit = th.sign_audit()
    ok = audit["triangleMinusSign"] and audit["negDijEqualsClosedForm"] and audit["signedSimplexIdentity"]
    return th.CheckReport("sign-audit", "standard triangle and unit ortho-simplex", ok, witness=audit)


@dataclass(frozen=True)
class Battery:
    build: Callable
    default_d: int
    dims: tuple


LAWS = {
    "simplex-identity": Battery(_simplex_identity, 3, (1, 2, 3, 4, 5)),
    "edge-identity": Battery(_edge_identity, 3, (3,)),
    "triangle-facts": Battery(_triangle_facts, 2, (2,)),
    "orthoscheme": Battery(_orthoscheme, 3, (1, 2, 3, 4, 5)),
    "orthoscheme-decomposition": Battery(_orthoscheme_decomposition, 2, (2, 3)),
    "dual-volume": Battery(_dual_volume, 3, (1, 2, 3, 4)),
    "valuation-split": Battery(_valuation_split, 3, (1, 2, 3, 4)),
    "omega0-translation": Battery(_omega0_translation, 3, (1, 2, 3, 4)),
    "omega0-minkowski": Battery(_minkowski, 2, (2, 3)),
    "homogeneity": Battery(_homogeneity, 2, (1, 2, 3)),
    "omega0-parity": Battery(_parity, 3, (1, 2, 3, 4)),
    "transformation-law": Battery(_transformation, 2, (1, 2, 3)),
    "omega-s-vanishing": Battery(_vanishing, 3, (1, 2, 3)),
    "homogenized-omega": Battery(_homogenized, 3, (1, 2, 3)),
    "translation-laws": Battery(_translation, 2, (1, 2, 3)),
    "product-adjoint": Battery(_product_adjoint, 3, (2, 3, 4)),
    "inversion-halves": Battery(_inversion_halves, 3, (3,)),
    "classification": Battery(_classification, 3, (2, 3)),
    "zonotope-characterization": Battery(_zonotope_characterization, 3, (2, 3)),
    "polygon-symmetry": Battery(_polygon_symmetry, 2, (2,)),
    "drop-product": Battery(_drop_product, 3, (2, 3, 4)),
    "drop-face": Battery(_drop_face, 3, (2, 3)),
    "drop-maxdrop": Battery(_drop_maxdrop, 3, (1, 2, 3, 4)),
    "drop-affine": Battery(_drop_affine, 3, (1, 2, 3)),
    "drop-projection": Battery(_drop_projection, 3, (2, 3, 4)),
    "drop-minkowski": Battery(_drop_minkowski, 3, (2, 3)),
    "drop-parity": Battery(_drop_parity, 3, (2, 3)),
    "drop-tiling": Battery(_drop_tiling, 3, (2, 3)),
    "sign-audit": Battery(_sign_audit, 2, (2,)),
}


class UnknownLawError(KeyError):
    pass


def run_battery(law: str, count: int = 10, seed: int = 0, d: Optional[int] = None, mode: str = "exact") -> list:
    if law not in LAWS:
        raise UnknownLawError(f"unknown law {law!r}; known: {', '.join(sorted(LAWS))}")
    battery = LAWS[law]
    d = battery.default_d if d is None else d
    if d not in battery.dims:
        raise ValueError(f"law {law!r} supports d in {battery.dims}, got {d}")
    reports = []
    for i in range(count):
        s = instance_seed(seed, i)
        r = battery.build(random.Random(s), d, mode)
        r.seed = s
        reports.append(r)
    return reports


def summarize(reports: list) -> list:
    """Rows (law, instances, passes, skipped, mode) in first-seen order."""
    rows = {}
    for r in reports:
        key = (r.law_id, r.mode)
        row = rows.setdefault(key, [r.law_id, 0, 0, 0, r.mode])
        row[1] += 1
        row[2] += r.passed is True
        row[3] += r.passed is None
    return [tuple(r) for r in rows.values()]
