from fractions import Fraction

import pytest

from stressforge.core import (
    Configuration,
    DegenerateError,
    Graph,
    Load,
    StressForgeError,
    complete_framework,
    make_framework,
)
from stressforge.stress import (
    atom_decomposition,
    atom_stress,
    equilibrium_matrix,
    is_self_stress,
    plane_atom_3d,
    recombine,
    relabel_framework,
    resolves_load,
    self_stress_space,
    stress_dimension,
    stress_from_dict,
)

from .conftest import rational_points

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_equilibrium_matrix_layout():
    f = complete_framework([(0, 0), (2, 0), (0, 3)])
    A = equilibrium_matrix(f)
    assert (len(A.entries), A.cols) == (6, 3)
    # column of edge (1,2): rows of vertex 1 hold p2 - p1, rows of vertex 2 hold p1 - p2
    assert A.column(0) == (2, 0, -2, 0, 0, 0)


def test_square_k4_stress_signs():
    f = complete_framework(SQUARE)
    space = self_stress_space(f)
    assert space.dimension == 1
    labels = space.basis[0].labels()
    assert {e for e, v in labels.items() if v == "cable"} == {(1, 3), (2, 4)}
    assert is_self_stress(f, space.basis[0])


def test_three_collinear_k4_zero_on_apex_edges():
    f = complete_framework([(0, 0), (1, 0), (2, 0), (0, 1)])
    space = self_stress_space(f)
    assert space.dimension == 1
    w = space.basis[0]
    assert all(w[(i, 4)] == 0 for i in (1, 2, 3))
    assert all(w[e] != 0 for e in [(1, 2), (1, 3), (2, 3)])


def test_triangle_has_no_stress_unless_collinear():
    assert stress_dimension(complete_framework([(0, 0), (1, 0), (0, 1)])) == 0
    assert stress_dimension(complete_framework([(0, 0), (1, 0), (3, 0)])) == 1


def test_coincident_points_free_edge():
    f = complete_framework([(0, 0), (0, 0), (1, 0)])
    space = self_stress_space(f)
    # vertex 1 balances only through 1-3, so 1-3 and 2-3 carry nothing
    assert space.dimension == 1
    w = space.basis[0]
    assert w[(1, 2)] != 0 and w[(1, 3)] == 0 and w[(2, 3)] == 0


def test_stress_on_non_edge_rejected():
    g = Graph(3, [(1, 2)])
    with pytest.raises(StressForgeError):
        stress_from_dict(g, {(1, 3): 1})


def test_load_resolution():
    f = complete_framework(SQUARE)
    w = self_stress_space(f).basis[0]
    assert resolves_load(f, w, Load([(0, 0)] * 4))
    g = make_framework(Graph(2, [(1, 2)]), Configuration([(0, 0), (1, 0)]))
    w2 = stress_from_dict(g.graph, {(1, 2): 1})
    # tension pulls 1 towards 2: external load must push it back
    assert resolves_load(g, w2, Load([(-1, 0), (1, 0)]))
    assert not resolves_load(g, w2, Load([(0, 0), (0, 0)]))


def test_generic_dimensions(rng):
    for n, k in ((4, 1), (5, 3), (6, 6)):
        pts = rational_points(rng, n)
        assert stress_dimension(complete_framework(pts)) == k


def test_atom_requires_general_position():
    atom_stress(SQUARE)
    with pytest.raises(DegenerateError):
        atom_stress([(0, 0), (1, 0), (2, 0), (0, 1)])


def test_plane_atom_3d():
    a = plane_atom_3d([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])
    assert not a.stress.is_zero()
    tilted = [(0, 0, 0), (1, 0, 1), (1, 1, 1), (0, 1, 0)]
    a2 = plane_atom_3d(tilted)
    assert is_self_stress(complete_framework(tilted), a2.stress)
    with pytest.raises(DegenerateError):
        plane_atom_3d([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(DegenerateError):
        plane_atom_3d([(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)])


def test_atom_decomposition_roundtrip(rng):
    pts = rational_points(rng, 5)
    f = complete_framework(pts)
    space = self_stress_space(f)
    w = 3 * space.basis[0] + (-2) * space.basis[2]
    terms = atom_decomposition(f, w)
    assert len(terms) == 3
    assert recombine(f, terms) == w


def test_relabel_preserves_dimension(rng):
    pts = rational_points(rng, 5)
    f = make_framework(Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (2, 4)]), Configuration(pts))
    g = relabel_framework(f, {1: 3, 2: 1, 3: 5, 4: 2, 5: 4})
    assert stress_dimension(g) == stress_dimension(f)


def test_stress_scaling_and_sum():
    f = complete_framework(SQUARE)
    w = self_stress_space(f).basis[0]
    assert is_self_stress(f, Fraction(5, 3) * w + w)
    assert (w - w).is_zero()
