import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from polyadjoint.algebra import LinearForm, MultiPoly, ratfn, ratfn_degree
from polyadjoint.canonical import (
    SingularSimplexError,
    adjoint,
    adjoint_and_drop,
    drop,
    dual_volume_at,
    facet_restriction,
    homogenized_adjoint,
    omega,
    omega0,
    omega_by_triangulation,
    omega_cone,
    omega_s,
    omega_s_all,
    omega_s_at,
    omega_simplex,
    simplex_forms,
    unit_adjoint,
)
from polyadjoint.families import box, crosspolytope, cube, pyramid, random_polytope, simplex
from polyadjoint.polytope import from_points, translate


def const(n, c):
    return MultiPoly.constant(n, c)


def F(h, *u):
    return LinearForm(h, tuple(u))


TRIANGLE_FORMS = [F(0, -1, 0), F(0, 0, -1), F(1, 1, 1)]
X = [F(0, -1, 0), F(0, 0, -1)]  # x1, x2 as forms
SUM = F(0, -1, -1)  # x1 + x2


def test_omega_standard_triangle():
    expected = ratfn(const(2, 1), TRIANGLE_FORMS)
    assert omega_simplex(TRIANGLE_FORMS).value == expected
    assert omega(simplex(2)).value == expected


def test_omega_segment():
    a, b = mpq(-1), mpq(2)
    W = omega(from_points([(a,), (b,)])).value
    assert W == ratfn(const(1, b - a), [F(-a, -1), F(b, 1)])


@given(st.lists(st.integers(1, 9), min_size=3, max_size=3))
def test_omega_simplex_ignores_normal_length(scales):
    scaled = [L.scaled(c) for L, c in zip(TRIANGLE_FORMS, scales)]
    assert omega_simplex(scaled) == omega_simplex(TRIANGLE_FORMS)


def test_singular_simplex_rejected():
    with pytest.raises(SingularSimplexError):
        omega_simplex([F(0, 1, 0), F(1, 1, 0), F(1, 0, 1)])


@pytest.mark.parametrize(
    "forms, expected",
    [
        ([F(0, 1)], ratfn(const(1, -1), [F(0, -1)])),
        ([F(0, -1, 0), F(0, 0, -1)], ratfn(const(2, 1), X)),
        ([F(0, -1, 0, 0), F(0, 0, -1, 0), F(0, 0, 0, -1)], ratfn(const(3, 1), [F(0, -1, 0, 0), F(0, 0, -1, 0), F(0, 0, 0, -1)])),
    ],
)
def test_omega_cone(forms, expected):
    assert omega_cone(forms).value == expected


def test_omega_unit_square():
    expected = ratfn(const(2, 1), [F(0, -1, 0), F(1, 1, 0), F(0, 0, -1), F(1, 0, 1)])
    assert omega(box([1, 1])).value == expected


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_omega_cube(d):
    forms = [F(1, *[s * (i == j) for j in range(d)]) for i in range(d) for s in (1, -1)]
    assert omega(cube(d)).value == ratfn(const(d, 2 ** d), forms)
    assert adjoint_and_drop(cube(d)).drop == d - 1


def test_lower_dimensional_omega_is_zero():
    P = from_points([(0, 0), (1, 1)])
    assert omega(P).value.is_zero()
    assert omega0(P).is_zero()


@pytest.mark.parametrize(
    "P, x, value",
    [
        (simplex(2), (mpq(1, 3), mpq(1, 3)), 27),
        (cube(2), (0, 0), 4),
        (cube(3), (0, 0, 0), 8),
    ],
)
def test_dual_volume_examples(P, x, value):
    assert dual_volume_at(P, x) == value
    assert omega(P).evaluate(x) == value


@given(st.integers(0, 10**6))
def test_dual_volume_oracle_random(seed):
    rng = random.Random(seed)
    P = random_polytope(rng.choice([2, 3]), rng, n_max=8)
    ws = [rng.randint(1, 5) for _ in P.vertices]
    x = tuple(sum(w * v[j] for w, v in zip(ws, P.vertices)) / sum(ws) for j in range(P.dim))
    assert omega(P).evaluate(x) == dual_volume_at(P, x)


@given(st.integers(0, 10**6))
def test_polar_and_triangulation_routes_agree(seed):
    rng = random.Random(seed)
    P = random_polytope(rng.choice([2, 3]), rng, n_max=8)
    assert omega(P, "polar").value == omega(P, "triangulation").value == omega_by_triangulation(P, seed)


@pytest.mark.parametrize(
    "P, d_drop",
    [(crosspolytope(3), 0), (crosspolytope(2), 1), (crosspolytope(4), 1), (pyramid(cube(2)), 0), (simplex(3), 0)],
)
def test_drop_examples(P, d_drop):
    assert drop(P) == d_drop
    assert adjoint_and_drop(P).drop == d_drop


def test_degree_matches_drop():
    for P in (cube(3), crosspolytope(3), pyramid(cube(2))):
        assert ratfn_degree(omega(P).value) == -P.dim - 1 - drop(P)


def test_homogenized_adjoint_examples():
    x0 = MultiPoly.var(3, 0)
    assert homogenized_adjoint(cube(2)).poly == x0.scale(4)
    assert homogenized_adjoint(box([1, 1])).poly == x0
    assert homogenized_adjoint(simplex(2)).poly == const(3, 1)
    H = homogenized_adjoint(cube(3))
    assert H.x0_power() == 2 and H.dehomogenize() == adjoint(cube(3))


def test_omega0_examples():
    seg = omega0(from_points([(mpq(-1),), (mpq(2),)]))
    assert seg == ratfn(const(1, -3), [(F(0, -1), 2)])
    assert omega0(simplex(2)) == ratfn(const(2, -1), X + [SUM])
    assert omega0(cube(2)).is_zero()


def test_omega_s_examples():
    assert omega_s(cube(2), 0).is_zero()
    assert omega_s(cube(2), 1) == ratfn(const(2, 4), [(X[0], 2), (X[1], 2)])
    assert omega_s(simplex(2), 1) == ratfn(const(2, -1), X + [(SUM, 2)])
    cube3 = omega_s_all(cube(3), 2)
    assert cube3[0].is_zero() and cube3[1].is_zero() and not cube3[2].is_zero()


@given(st.integers(0, 10**6), st.integers(0, 2))
def test_omega_s_degree(seed, s):
    P = random_polytope(2, random.Random(seed), n_max=6)
    W = omega_s(P, s)
    if not W.is_zero():
        assert ratfn_degree(W) == -(P.dim + 1 + s)


def test_omega_s_at_matches_series():
    P = simplex(2)
    x = (mpq(2, 3), mpq(-5, 7))
    t = (mpq(1, 2), mpq(3))
    coeffs = omega_s_at(P, 2, x, t)
    series = omega_s_all(translate(P, t), 2)
    assert coeffs == [c.evaluate(x) for c in series]


@pytest.mark.parametrize(
    "P, facet_u, expected",
    [
        (cube(3), (0, 0, 1), lambda: omega(cube(2)).value),
        (cube(2), (0, 1), lambda: omega(cube(1)).value),
        (simplex(2), (0, -1), lambda: omega(from_points([(0,), (1,)])).value),
    ],
)
def test_facet_residue(P, facet_u, expected):
    i = next(i for i, L in enumerate(P.facets) if L.u == facet_u)
    r = facet_restriction(P, i)
    assert not r.scale_pending
    assert r.form.value == expected()


def test_facet_residue_pending_scale():
    i = next(i for i, L in enumerate(simplex(2).facets) if L.u == (1, 1))
    assert facet_restriction(simplex(2), i).scale_pending


def test_unit_adjoint_345():
    T = from_points([(0, 0), (4, 0), (0, 3)])
    assert unit_adjoint(T) == const(2, mpq(12, 5))
    assert unit_adjoint(simplex(2)) is None


@given(st.integers(0, 10**6))
def test_probe_drop_matches_symbolic(seed):
    rng = random.Random(seed)
    P = random_polytope(rng.choice([2, 3]), rng, n_max=8)
    assert drop(P) == adjoint_and_drop(P).drop
    v = (mpq(3), mpq(-7, 2), mpq(5))[: P.dim]
    from polyadjoint.canonical import adjoint_top, adjoint_top_at

    assert adjoint_top_at(P, v) == adjoint_top(P).evaluate(v)
