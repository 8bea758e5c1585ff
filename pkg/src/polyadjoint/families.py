"""Standard polytope families and seeded random generators."""
from __future__ import annotations

import itertools
import random
from typing import Sequence

from gmpy2 import mpq

from .algebra import LinearForm, Q, qvec
from .polytope import (
    Polytope,
    from_inequalities,
    from_points,
    is_centrally_symmetric,
    product,
    segment,
    symmetry_tests,
    zonotope_from_generators,
)


class UnknownFamilyError(KeyError):
    pass


def cube(d: int) -> Polytope:
    return from_points(list(itertools.product((-1, 1), repeat=d)))


def box(lengths: Sequence) -> Polytope:
    return from_points(list(itertools.product(*[(0, Q(a)) for a in lengths])))


def crosspolytope(d: int) -> Polytope:
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(d)))
    return from_points(pts)


def simplex(d: int) -> Polytope:
    pts = [(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return from_points(pts)


def pyramid(base: Polytope, apex_offset=None, height=1) -> Polytope:
    """Pyramid over ``base`` with apex above ``apex_offset`` (default: base centroid)."""
    c = base.centroid() if apex_offset is None else qvec(apex_offset)
    pts = [v + (mpq(0),) for v in base.vertices] + [tuple(c) + (Q(height),)]
    return from_points(pts)


def prism(base: Polytope, height=1) -> Polytope:
    return product(base, segment((0,), (height,)))


def zonotope(gens: Sequence[Sequence]) -> Polytope:
    return zonotope_from_generators(gens)


def orthoscheme_vertices(ells: Sequence) -> list:
    ells = [Q(a) for a in ells]
    d = len(ells)
    return [tuple(ells[k] if k < i else mpq(0) for k in range(d)) for i in range(d + 1)]


def orthoscheme(ells: Sequence) -> Polytope:
    return from_points(orthoscheme_vertices(ells))


def cell24() -> Polytope:
    pts = set()
    for i, j in itertools.combinations(range(4), 2):
        for si in (1, -1):
            for sj in (1, -1):
                v = [0] * 4
                v[i], v[j] = si, sj
                pts.add(tuple(v))
    return from_points(sorted(pts))


def hexagon() -> Polytope:
    return zonotope([(1, 0), (0, 1), (1, 1)])


def rhombic_dodecahedron() -> Polytope:
    return zonotope([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def skew_triangles_sum() -> Polytope:
    """conv{0, e1, e2} + conv{0, e3, e1+e2+e3}."""
    from .polytope import minkowski_sum

    A = from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    B = from_points([(0, 0, 0), (0, 0, 1), (1, 1, 1)])
    return minkowski_sum(A, B)


# --- random generation ----------------------------------------------------------


def random_rational(rng: random.Random, max_den: int = 10) -> mpq:
    q = rng.randint(1, max_den)
    return mpq(rng.randint(-q, q), q)


def random_polytope(d: int, rng: random.Random, n_max: int = 12) -> Polytope:
    """Hull of n in [d+2, n_max] points with coordinates p/q in [-1, 1], q <= 10;
    degenerate hulls are resampled."""
    while True:
        n = rng.randint(d + 2, max(d + 2, n_max))
        pts = [tuple(random_rational(rng) for _ in range(d)) for _ in range(n)]
        P = from_points(pts)
        if P.full_dim:
            return P


def random_polygon(rng: random.Random, centrally_symmetric: bool) -> Polytope:
    while True:
        if centrally_symmetric:
            k = rng.randint(2, 5)
            half = [tuple(random_rational(rng) for _ in range(2)) for _ in range(k)]
            pts = half + [tuple(-c for c in p) for p in half]
        else:
            pts = [tuple(random_rational(rng) for _ in range(2)) for _ in range(rng.randint(3, 8))]
        P = from_points(pts)
        if P.full_dim and is_centrally_symmetric(P.vertices) == centrally_symmetric:
            return P


def random_zonotope(d: int, rng: random.Random, k_max: int = 5) -> Polytope:
    while True:
        k = rng.randint(d, max(d, k_max))
        gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(k)]
        if any(not any(g) for g in gens):
            continue
        Z = zonotope(gens)
        if Z.full_dim:
            return Z


def random_non_zonotope(d: int, rng: random.Random) -> Polytope:
    while True:
        P = random_polytope(d, rng)
        if not symmetry_tests(P)["zonotopeCombinatorial"]:
            return P


# --- curated corpora ------------------------------------------------------------


def pythagorean_tetrahedron(heights=(1, 1, 1, 1)) -> Polytope:
    """Tetrahedron whose facet normals are rational unit vectors pairwise at
    angles with rational sine, so that all edge lengths are rational."""
    normals = [(-1, 0, 0), (mpq(-4, 5), mpq(-3, 5), 0), (mpq(12, 13), mpq(-3, 13), mpq(-4, 13)), (mpq(12, 13), mpq(4, 13), mpq(3, 13))]
    return from_inequalities(3, [LinearForm(h, u) for u, h in zip(normals, heights)])


def pythagorean_corpus() -> list:
    """3D polytopes whose facet normals and edges all have rational length."""
    tri345 = from_points([(0, 0), (4, 0), (0, 3)])
    trapezoid = from_points([(0, 0), (10, 0), (7, 4), (3, 4)])
    return [
        ("cube", cube(3)),
        ("box-1x2x3", box([1, 2, 3])),
        ("prism-3-4-5", prism(tri345)),
        ("zonotope-(3,4,0)-e1-e3", zonotope([(3, 4, 0), (1, 0, 0), (0, 0, 1)])),
        ("zonotope-(3,4,0)-e1-e2-e3", zonotope([(3, 4, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])),
        ("prism-trapezoid", prism(trapezoid, 2)),
        ("tetrahedron-pythagorean", pythagorean_tetrahedron()),
        ("tetrahedron-pythagorean-skewed", pythagorean_tetrahedron((1, 2, 3, 4))),
    ]


def corpus() -> list:
    """Twenty curated polytopes of dimension at most 4."""
    rng = random.Random(2024)
    pentagon = from_points([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)])
    items = [
        ("segment", from_points([(-1,), (2,)])),
        ("square", cube(2)),
        ("cube3", cube(3)),
        ("cube4", cube(4)),
        ("cross2", crosspolytope(2)),
        ("cross3", crosspolytope(3)),
        ("cross4", crosspolytope(4)),
        ("simplex2", simplex(2)),
        ("simplex3", simplex(3)),
        ("simplex4", simplex(4)),
        ("pentagon", pentagon),
        ("hexagon", hexagon()),
        ("square-pyramid", pyramid(cube(2))),
        ("triangular-prism", prism(simplex(2))),
        ("rhombic-dodecahedron", rhombic_dodecahedron()),
        ("orthoscheme-3-4", orthoscheme([3, 4])),
        ("orthoscheme-1-2-3", orthoscheme([1, 2, 3])),
        ("skew-triangles-sum", skew_triangles_sum()),
        ("random2", random_polytope(2, rng)),
        ("random3", random_polytope(3, rng, n_max=8)),
    ]
    return items


FAMILIES = ("cube", "crosspolytope", "simplex", "pyramid", "prism", "zonotope", "orthoscheme", "24cell", "random")


def generate_family(name: str, d: int = 3, seed: int = 0, params=None) -> Polytope:
    """Deterministic member of a named family; ``random`` is seeded."""
    rng = random.Random(seed)
    if name == "cube":
        return cube(d)
    if name == "crosspolytope":
        return crosspolytope(d)
    if name == "simplex":
        return simplex(d)
    if name == "pyramid":
        base = cube(d - 1) if params is None else params
        return pyramid(base)
    if name == "prism":
        base = simplex(d - 1) if params is None else params
        return prism(base)
    if name == "zonotope":
        if params is not None:
            return zonotope(params)
        return random_zonotope(d, rng)
    if name == "orthoscheme":
        ells = params if params is not None else list(range(1, d + 1))
        return orthoscheme(ells)
    if name in ("24cell", "24-cell"):
        return cell24()
    if name == "random":
        return random_polytope(d, rng)
    named = {"octahedron": lambda: crosspolytope(3), "hexagon": hexagon, "rhombic-dodecahedron": rhombic_dodecahedron}
    if name in named:
        return named[name]()
    raise UnknownFamilyError(f"unknown family {name!r}; known: {', '.join(FAMILIES + tuple(named))}")
