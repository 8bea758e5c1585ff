import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from polyadjoint import theorems as th
from polyadjoint.algebra import LinearForm, MultiPoly
from polyadjoint.batteries import random_simplex_vertices
from polyadjoint.canonical import drop
from polyadjoint.families import (
    cube,
    crosspolytope,
    prism,
    pythagorean_corpus,
    random_polytope,
    random_zonotope,
    rhombic_dodecahedron,
    simplex,
    skew_triangles_sum,
)
from polyadjoint.polytope import clip, from_points, minkowski_sum, segment

TRI345 = [(0, 0), (4, 0), (0, 3)]


def F(h, *u):
    return LinearForm(h, tuple(u))


def test_valuation_split_examples():
    assert th.check_valuation_split(cube(2), F(0, 1, -1)).passed
    assert th.check_valuation_split(from_points([(0,), (2,)]), F(1, 1)).passed
    assert th.check_valuation_split(cube(2), F(1, 1, 0)).passed is None


@pytest.mark.parametrize(
    "law, args, lhs",
    [
        ("product", (simplex(2), segment((0,), (1,))), 1),
        ("parity", (crosspolytope(3),), 0),
        ("tiling", (cube(2), [clip(cube(2), F(0, 1, -1)), clip(cube(2), F(0, -1, 1))]), 1),
        ("maxdrop", (cube(3),), 2),
    ],
)
def test_drop_law_examples(law, args, lhs):
    r = th.check_drop_law(law, *args)
    assert r.passed and r.lhs == lhs


def test_drop_law_face_equality_needs_parallel_facet():
    P = cube(3)
    for f in P.lattice.faces(2):
        r = th.check_drop_law("face", P, f)
        assert r.passed and r.witness["parallelFacets"]


@pytest.mark.parametrize(
    "P, drop_, label",
    [
        (cube(3), 2, "zonotope"),
        (prism(simplex(2)), 1, "P+(-P) zonotope, P not"),
        (crosspolytope(3), 0, "P+(-P) not a zonotope"),
        (from_points([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)]), 0, "not centrally symmetric"),
        (cube(2), 1, "centrally symmetric"),
        (skew_triangles_sum(), 1, "P+(-P) zonotope, P not"),
    ],
)
def test_classification_examples(P, drop_, label):
    c = th.classify_polytope(P)
    assert (c.drop, c.label) == (drop_, label)


@pytest.mark.parametrize("P", [cube(2), from_points(TRI345), cube(3)])
def test_edge_identity_examples(P):
    r = th.verify_edge_identity(P)
    assert r.passed and r.mode == "exact"


def test_edge_identity_345_lhs():
    r = th.verify_edge_identity(from_points(TRI345))
    x = MultiPoly.var(2, 0)
    y = MultiPoly.var(2, 1)
    assert r.lhs == (x * x + y * y).scale(mpq(12, 5))


@pytest.mark.parametrize("name, P", pythagorean_corpus())
def test_edge_identity_pythagorean(name, P):
    assert th.verify_edge_identity(P, mode="exact").passed
    assert th.verify_edge_identity(P, mode="exact-raw").passed


@given(st.integers(0, 10**6))
@settings(max_examples=5)
def test_edge_identity_float_random(seed):
    P = random_polytope(3, random.Random(seed), n_max=8)
    r = th.verify_edge_identity(P, mode="float", seed=seed)
    assert r.passed and r.mode == "float(1e-9)"


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_simplex_identity_random(d, seed):
    vs = random_simplex_vertices(d, random.Random(seed))
    assert th.verify_simplex_identity(vs).passed
    assert th.verify_simplex_identity(vs, {0: 3}).passed


def test_simplex_identity_examples():
    r = th.verify_simplex_identity(simplex(2))
    x = MultiPoly.var(2, 0)
    y = MultiPoly.var(2, 1)
    assert r.passed and r.lhs == x * x + y * y
    seg = th.verify_simplex_identity([(mpq(1),), (mpq(4),)])
    assert seg.passed and seg.lhs == (MultiPoly.var(1, 0) ** 2).scale(3)
    tripled = th.verify_simplex_identity(simplex(2), {0: 3})
    assert tripled.lhs == r.lhs.scale(3)


def test_simplex_adjoint_is_translation_invariant():
    vs = random_simplex_vertices(3, random.Random(1))
    moved = [tuple(c + mpq(5, 3) for c in v) for v in vs]
    assert th.verify_simplex_identity(vs).witness == th.verify_simplex_identity(moved).witness


@pytest.mark.parametrize(
    "verts, adj",
    [
        (TRI345, mpq(12, 5)),
        ([(0, 0), (8, 0), (0, 6)], mpq(24, 5)),
        ([(7, -2), (11, -2), (7, 1)], mpq(12, 5)),
    ],
)
def test_triangle_facts(verts, adj):
    r = th.verify_triangle_facts(verts)
    assert r.passed
    assert r.lhs["adj"] == adj == r.rhs["areaOverR"]
    assert r.witness == {"minusSignHolds": True, "plusSignHolds": False}


def test_triangle_facts_irrational_falls_back():
    r = th.verify_triangle_facts([(0, 0), (1, 0), (0, 1)])
    assert r.passed and r.mode == "float(1e-9)"


def test_orthoscheme_examples():
    r = th.verify_orthoscheme_closed_forms([1, 1, 1, 1])
    assert r.passed and r.lhs["adj"] == 1 and r.lhs["dets"]["0,1"] == -1
    r = th.verify_orthoscheme_closed_forms([1, 3, 4, 1])
    assert r.passed and r.lhs["adj"] == 12
    r = th.verify_orthoscheme_closed_forms([1, 1, 1, 1, 1])
    assert r.passed and r.rhs["closed"]["0,2"] == 2 and r.lhs["dets"]["0,2"] == -2
    with pytest.raises(ValueError):
        th.verify_orthoscheme_closed_forms([1, 0, 1, 1])


@given(st.lists(st.fractions(min_value=mpq(1, 4), max_value=9, max_denominator=5), min_size=3, max_size=7))
def test_orthoscheme_random(ells):
    assert th.verify_orthoscheme_closed_forms([mpq(f.numerator, f.denominator) for f in ells]).passed


def test_orthoscheme_decomposition_reproduces_omega():
    P = from_points(TRI345)
    assert th.check_orthoscheme_decomposition(P, (mpq(1), mpq(1, 2))).passed
    assert th.check_orthoscheme_decomposition(P, (mpq(5), mpq(7))).passed


def test_sign_audit():
    audit = th.sign_audit()
    assert audit["triangleMinusSign"] and not audit["trianglePlusSign"]
    assert audit["negDijEqualsClosedForm"] and not audit["dijEqualsClosedForm"]


@pytest.mark.parametrize(
    "P, s_max",
    [(cube(3), 2), (simplex(2), 1), (from_points([(0,), (3,)]), 0), (simplex(2), 2)],
)
def test_translation_laws(P, s_max):
    ts = [(mpq(1, 2),) * P.dim, (mpq(-3),) + (mpq(2, 7),) * (P.dim - 1)]
    r = th.verify_translation_laws(P, s_max, ts)
    assert r.passed, r.witness


def test_translation_laws_tiling():
    # square cut along a diagonal, pieces reassembled into a parallelogram
    sq = cube(2)
    upper_left = clip(sq, F(0, 1, -1))
    lower_right = clip(sq, F(0, -1, 1))
    r = th.verify_translation_laws(sq, 1, [(1, 0)], tiling=([upper_left, lower_right], [(0, 0), (0, 2)]))
    assert r.passed
    assert r.witness["tiling"] == {"dropP": 1, "dropQ": 1, "minPieces": 0}


def test_polynomial_degree_on_grid():
    vals = {(i, j): mpq(i * i + 3 * j) for i in range(4) for j in range(4)}
    assert th.polynomial_degree_on_grid(vals, 2, 4) == 2


@pytest.mark.parametrize(
    "P, Q, d",
    [
        (segment((0,), (1,)), segment((0,), (2,)), 1),
        (simplex(2), segment((0,), (1,)), 1),
        (cube(2), cube(2), 3),
    ],
)
def test_product_adjoint(P, Q, d):
    r = th.verify_product_adjoint(P, Q)
    assert r.passed and r.witness["drop"] == d


def test_inversion_and_halves_cube():
    r = th.verify_inversion_and_halves(cube(3), F(0, 1, 1, 1))
    assert r.passed and r.witness["sumLabel"] == "zonotope"


def test_inversion_and_halves_rhombic_dodecahedron():
    Z = rhombic_dodecahedron()
    r = th.verify_inversion_and_halves(Z, F(-1, 1, -2, 0))
    assert r.passed


def test_inversion_rejects_off_centre_plane():
    with pytest.raises(ValueError):
        th.verify_inversion_and_halves(cube(3), F(1, 1, 0, 0))


def test_law_checks_on_random_instances():
    rng = random.Random(11)
    P = random_polytope(3, rng, n_max=7)
    Q = random_polytope(3, rng, n_max=6)
    assert th.check_parity(P).passed
    assert th.check_minkowski_additivity(P, Q).passed
    assert th.check_homogeneity(P, mpq(5, 2), 0).passed
    assert th.check_homogeneity(P, mpq(2, 3), 2).passed
    assert th.check_transformation_law(P, [[1, 2, 0], [0, 1, 0], [1, 0, 3]], [1, mpq(1, 2), 0]).passed
    assert th.check_omega0_translation(P, (1, 2, 3)).passed
    assert th.check_homogenized_omega(P).passed


def test_vanishing_pattern_cube():
    r = th.check_vanishing_pattern(cube(3), 2)
    assert r.passed and r.lhs == [True, True, False]


def test_zonotope_characterization_random():
    rng = random.Random(2)
    for _ in range(3):
        assert th.check_zonotope_characterization(random_zonotope(3, rng)).passed


def test_report_serializes():
    r = th.verify_triangle_facts(TRI345).to_json()
    assert r["pass"] is True and r["lhs"]["adj"] == "12/5"
