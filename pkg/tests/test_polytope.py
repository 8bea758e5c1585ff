import random
import threading

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from polyadjoint.algebra import LinearForm
from polyadjoint.families import (
    cell24,
    crosspolytope,
    cube,
    random_polytope,
    rhombic_dodecahedron,
    simplex,
)
from polyadjoint.polytope import (
    HPolytope,
    RepresentationError,
    SizeError,
    VPolytope,
    affine_image,
    clip,
    dual_convert,
    edge_figures,
    from_inequalities,
    from_points,
    minkowski_sum,
    orthoscheme_decomposition,
    polar_cells,
    product,
    restrict_to_affine_span,
    segment,
    symmetry_tests,
    translate,
    triangulate,
    volume,
    zonotope_from_generators,
)


def test_square_from_grid_drops_interior_points():
    P = from_points([(i, j) for i in range(3) for j in range(3)])
    assert len(P.vertices) == 4 and P.m == 4


def test_cube_lattice():
    P = cube(3)
    assert P.lattice.f_vector() == (8, 12, 6)
    assert volume(P) == 8


def test_cell24_counts():
    P = cell24()
    assert len(P.vertices) == 24 and P.m == 24


def test_rhombic_dodecahedron_has_twelve_facets():
    assert rhombic_dodecahedron().m == 12


def test_lower_dimensional_hull():
    P = from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert not P.full_dim and P.affine_dim == 2
    Q, pivots = restrict_to_affine_span(P)
    assert Q.full_dim and pivots == [0, 1]


def test_inequalities_roundtrip():
    P = cube(2)
    Q = from_inequalities(2, P.facets)
    assert Q == P
    assert dual_convert(HPolytope(2, tuple(P.facets))) == dual_convert(VPolytope(2, P.vertices))


def test_unbounded_and_empty_rejected():
    with pytest.raises(RepresentationError):
        from_inequalities(2, [LinearForm(0, (1, 0)), LinearForm(0, (0, 1))])
    with pytest.raises(RepresentationError):
        from_inequalities(1, [LinearForm(-1, (1,)), LinearForm(-1, (-1,))])


def test_dimension_limit():
    with pytest.raises(SizeError):
        from_points([tuple(int(i == j) for j in range(7)) for i in range(8)])


def test_symmetry_flags():
    assert symmetry_tests(crosspolytope(3)) == {"centrallySymmetric": True, "zonotopeCombinatorial": False}
    assert symmetry_tests(cube(3))["zonotopeCombinatorial"]
    assert not symmetry_tests(simplex(3))["centrallySymmetric"]


def test_edge_figures_345():
    P = from_points([(0, 0), (4, 0), (0, 3)])
    lengths = sorted(f.length for f in edge_figures(P))
    assert lengths == [3, 4, 5]


def test_edge_normals_are_orthogonal():
    P = random_polytope(3, random.Random(4))
    for fig in edge_figures(P):
        diff = [b - a for a, b in zip(*fig.endpoints)]
        for F in fig.containing_facets:
            assert sum(u * c for u, c in zip(P.facets[F].u, diff)) == 0


@given(st.integers(0, 10**6))
def test_triangulations_agree_on_volume(seed):
    P = random_polytope(3, random.Random(seed), n_max=8)
    v1 = sum(c.volume() for c in triangulate(P))
    v2 = sum(c.volume() for c in triangulate(P, seed=seed))
    assert abs(v1) == abs(v2) == volume(P)


def test_polar_cells_cover_facet_sets():
    P = cube(3)
    cells = polar_cells(P)
    assert len(cells) == 4 and all(len(c) == 4 for c in cells)
    e = P.lattice.edges()[0]
    assert all(len(c) == 2 for c in polar_cells(P, e))


def test_constructions():
    S = segment((0,), (2,))
    assert volume(product(S, S)) == 4
    Z = zonotope_from_generators([(1, 0), (0, 1), (1, 1)])
    assert len(Z.vertices) == 6
    assert minkowski_sum(simplex(2), translate(simplex(2), (1, 1))).m == 3
    assert minkowski_sum(simplex(2), affine_image(simplex(2), [[-1, 0], [0, -1]], [0, 0])).m == 6
    A = affine_image(cube(2), [[2, 1], [0, 1]], [1, 0])
    assert volume(A) == 8


def test_clip_square_by_diagonal():
    halves = [clip(cube(2), LinearForm(0, (1, 1))), clip(cube(2), LinearForm(0, (-1, -1)))]
    assert [len(h.vertices) for h in halves] == [3, 3]
    assert sum(volume(h) for h in halves) == 4


def test_orthoscheme_decomposition_of_square_centre():
    cells = orthoscheme_decomposition(cube(2), (mpq(0), mpq(0)))
    assert len(cells) == 8
    assert all(c.sign * c.volume() == mpq(1, 2) for c in cells)


def test_orthoscheme_decomposition_outside_point():
    T = from_points([(0, 0), (4, 0), (0, 3)])
    cells = orthoscheme_decomposition(T, (mpq(5), mpq(5)))
    signs = {c.sign for c in cells if c.sign}
    assert signs == {1, -1}
    assert sum(c.sign * c.volume() for c in cells) == volume(T)


def test_lattice_reads_are_thread_safe():
    P = cube(3)
    results = []
    threads = [threading.Thread(target=lambda: results.append(P.lattice.f_vector())) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [(8, 12, 6)] * 4
