import pytest
from gmpy2 import mpq
from hypothesis import assume, given, strategies as st

from polyadjoint.algebra import (
    DimensionError,
    LinearForm,
    MultiPoly,
    Q,
    RatFn,
    UnsupportedPolyhedronError,
    det_cofactor,
    det_exact,
    linear_form_divide,
    mat_inverse,
    pack,
    rank,
    ratfn,
    ratfn_add,
    rational_sqrt,
    series_coefficients_in_marker,
    solve,
    unpack,
)

from strategies import forms, matrices, polys, rationals, vectors


def x(i, n=2):
    return MultiPoly.var(n, i)


def test_rational_parsing():
    assert Q("3/6") == mpq(1, 2)
    assert Q(-4) == mpq(-4)
    for bad in ("1.5", "1e3", "", "a/b"):
        with pytest.raises(ValueError):
            Q(bad)
    with pytest.raises(TypeError):
        Q(0.5)


def test_rational_sqrt():
    assert rational_sqrt(mpq(25, 16)) == mpq(5, 4)
    assert rational_sqrt(mpq(2)) is None


def test_det_example():
    assert det_exact([[1, 2], [3, 7]]) == 1
    with pytest.raises(DimensionError):
        det_exact([[1, 2, 3], [4, 5, 6]])


@given(st.integers(1, 5).flatmap(matrices))
def test_det_matches_cofactor(M):
    assert det_exact(M) == det_cofactor(M)


@given(matrices(3))
def test_inverse_and_solve(M):
    assume(det_exact(M) != 0)
    inv = mat_inverse(M)
    for i in range(3):
        for j in range(3):
            assert sum(M[i][k] * inv[k][j] for k in range(3)) == (1 if i == j else 0)
    b = [mpq(1), mpq(-2), mpq(3, 7)]
    xs = solve(M, b)
    assert [sum(a * c for a, c in zip(row, xs)) for row in M] == b
    assert rank(M) == 3


@given(st.lists(st.integers(0, 40), min_size=1, max_size=6))
def test_pack_roundtrip(exps):
    assert unpack(pack(exps), len(exps)) == tuple(exps)


def test_pack_is_graded():
    assert pack((0, 2)) > pack((1, 0))
    assert pack((1, 1)) > pack((0, 1))
    assert pack((3, 0, 0)) > pack((0, 2, 0))


def test_divide_difference_of_squares():
    p = x(0) * x(0) - x(1) * x(1)
    q = p.divide_affine(0, [1, -1])
    assert q == x(0) + x(1)
    assert (x(0) * x(0) + 1).divide_affine(0, [1, -1]) is None


@given(polys(), forms())
def test_divide_roundtrip(p, L):
    q = linear_form_divide(p * L.to_poly(), L)
    assert q == p


@given(polys(), polys())
def test_ring_axioms(p, q):
    assert p * q == q * p
    assert (p + q) - q == p
    assert (p * (q + p)) == p * q + p * p


@given(polys(max_terms=3, max_deg=2), vectors(2))
def test_evaluate_is_homomorphism(p, pt):
    q = p * p + p
    assert q.evaluate(pt) == p.evaluate(pt) ** 2 + p.evaluate(pt)


@given(polys())
def test_poly_json_roundtrip(p):
    assert MultiPoly.from_json(p.to_json(), 2) == p


def test_homogenize_places_marker_first():
    p = x(0) * x(1) + x(0) + 3
    h = p.homogenize(2)
    assert h.is_homogeneous() and h.degree() == 2
    assert h.evaluate((mpq(1), mpq(2), mpq(5))) == p.evaluate((mpq(2), mpq(5)))


def test_segment_sum():
    # [0,1] and [1,2] combine to [0,2]
    t = LinearForm(0, (-1,))
    left = ratfn(MultiPoly.constant(1, 1), [t, LinearForm(1, (1,))])
    right = ratfn(MultiPoly.constant(1, 1), [LinearForm(-1, (-1,)), LinearForm(2, (1,))])
    total = ratfn_add(left, right)
    expected = ratfn(MultiPoly.constant(1, 2), [t, LinearForm(2, (1,))])
    assert total == expected
    assert total.evaluate((mpq(1, 2),)) == mpq(8, 3)


@given(forms(), forms(), forms(), vectors(2))
def test_ratfn_add_is_exact(A, B, C, pt):
    f = ratfn(MultiPoly.constant(2, 1), [A, B])
    g = ratfn(x(0), [B, C])
    assume(all(L(pt) != 0 for L in (A, B, C)))
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)
    assert (f - f).is_zero()


@given(forms(), vectors(2))
def test_ratfn_json_roundtrip(A, pt):
    f = ratfn(x(1) + 2, [(A, 2)])
    assert RatFn.from_json(f.to_json()) == f


def test_ratfn_cancels_common_factor():
    L = LinearForm(1, (1, 0))
    f = ratfn(L.to_poly() * x(1), [L, LinearForm(0, (0, 1))])
    assert f.den == ()
    assert f == RatFn.constant(2, -1)


def test_canonical_form_scaling():
    L = LinearForm(mpq(-3, 2), (mpq(0), mpq(-3)))
    c, K = L.canonical()
    assert K.h == 1 and K.u == (0, 2)
    assert L.scaled(1 / c) == K


def test_series_cube_marker():
    # [-1,1]^2 homogenized: denominator (x0 -+ x_i) pairs, numerator 4 x0
    n = 3
    forms_ = [LinearForm(0, (-1, s if i == 0 else 0, s if i == 1 else 0)) for i in range(2) for s in (1, -1)]
    num = MultiPoly.var(n, 0).scale(4)
    series = series_coefficients_in_marker(num, forms_, 1)
    assert series[0].is_zero()
    expected = ratfn(MultiPoly.constant(2, 4), [(LinearForm(0, (1, 0)), 2), (LinearForm(0, (0, 1)), 2)])
    assert series[1] == expected


def test_series_rejects_marker_only_factor():
    with pytest.raises(UnsupportedPolyhedronError):
        series_coefficients_in_marker(MultiPoly.constant(2, 1), [LinearForm(0, (1, 0))], 1)


@given(forms(3), forms(3), st.integers(0, 3))
def test_series_truncation_congruence(A, B, s):
    """The truncated series agrees with num / den up to O(x0^(s+1))."""
    assume(any(A.u[1:]) and any(B.u[1:]))
    num = MultiPoly.var(3, 1) + 1
    series = series_coefficients_in_marker(num, [A, B], s)
    pt = (mpq(1, 7), mpq(2, 3))
    assume(all(LinearForm(L.h, L.u[1:])(pt) != 0 for L in (A, B)))
    eps = mpq(1, 10**30)
    full = num.evaluate((eps,) + pt) / (A((eps,) + pt) * B((eps,) + pt))
    approx = sum((c.evaluate(pt) * eps ** k for k, c in enumerate(series)), mpq(0))
    assert abs(full - approx) <= abs(eps) ** (s + 1) * 10**12
