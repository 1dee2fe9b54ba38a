import random
from fractions import Fraction
from itertools import combinations

import pytest

from stressforge.core import Configuration, DegenerateError, Graph, complete_framework, make_framework
from stressforge.geometry import ConditionId, check_condition, sample_generic, sample_on_condition
from stressforge.samples import (
    SURGERY1_EXAMPLE_ROLES,
    SURGERY3D_PAIRS,
    SURGERY3D_ROLES,
    surgery1_example_graph,
    surgery3d_example,
)
from stressforge.stress import stress_dimension
from stressforge.surgery import (
    BindingError,
    PreconditionError,
    SurgerySite,
    ZeroEdgeStressError,
    edge_exchange_check,
    meet_planes,
    plane_through,
    surgery1_apply,
    surgery2_verify,
    surgery3d_verify,
    triangle_cancellation,
    two_sum,
)

from .conftest import rational_points


def random_two_sum_pair(rng):
    """Two generic complete frameworks (K4 or K5) and an edge of each."""
    f1 = complete_framework(rational_points(rng, rng.choice((4, 5))))
    f2 = complete_framework(rational_points(rng, rng.choice((4, 5))))
    return f1, rng.choice(f1.edges), f2, rng.choice(f2.edges)


def test_two_sum_dimension_law():
    rng = random.Random(21)
    for _ in range(25):
        f1, e1, f2, e2 = random_two_sum_pair(rng)
        g, v = two_sum(f1, e1, f2, e2)
        assert v.dim_after == v.dim_before == stress_dimension(f1) + stress_dimension(f2) - 1
        assert g.n == f1.n + f2.n - 2
        assert e1 not in g.graph


def test_two_sum_zero_edge_rejected():
    f1 = complete_framework([(0, 0), (1, 0), (2, 0), (0, 1)])
    f2 = complete_framework([(0, 0), (1, 0), (1, 1), (0, 1)])
    with pytest.raises(ZeroEdgeStressError):
        two_sum(f1, (1, 4), f2, (1, 2))


def random_exchange_instance(rng):
    n = 6
    pts = rational_points(rng, n)
    quad = sorted(rng.sample(range(1, n + 1), 4))
    h_edges = list(combinations(quad, 2))
    others = [e for e in combinations(range(1, n + 1), 2) if e not in h_edges]
    g_edges = h_edges + rng.sample(others, rng.randint(3, 8))
    G = Graph(n, g_edges)
    H = Graph(n, h_edges)
    e1, e2 = rng.sample(h_edges, 2)
    return G, H, e1, e2, Configuration(pts)


def test_edge_exchange_equal_dimensions():
    rng = random.Random(31)
    for _ in range(25):
        G, H, e1, e2, P = random_exchange_instance(rng)
        v = edge_exchange_check(G, H, e1, e2, P)
        assert v.preconditions_ok
        assert v.dims_equal


def test_edge_exchange_reports_failed_precondition():
    G = Graph.complete(4)
    P = Configuration([(0, 0), (1, 0), (2, 0), (0, 1)])
    v = edge_exchange_check(G, G, (1, 2), (1, 4), P)
    assert not v.preconditions_ok
    assert v.detail["stress nonzero on e2"] is False


def _site():
    return SurgerySite(SURGERY1_EXAMPLE_ROLES)


def test_surgery1_worked_example_on_condition():
    rng = random.Random(41)
    g7 = surgery1_example_graph()
    for _ in range(10):
        conf = sample_on_condition("K7-ConstructedConcurrency", 7, rng)
        after, v = surgery1_apply(make_framework(g7, conf), _site())
        assert (v.dim_before, v.dim_after) == (1, 1)
        # after the contraction, P is vertex 6 and vertex 5 keeps its place
        assert check_condition(ConditionId("Concurrent3Lines"), after.configuration)


def test_surgery1_generic_controls():
    rng = random.Random(43)
    g7 = surgery1_example_graph()
    for _ in range(10):
        conf = sample_generic(7, rng)
        after, v = surgery1_apply(make_framework(g7, conf), _site())
        assert (v.dim_before, v.dim_after) == (0, 0)


def test_surgery1_pattern_checked():
    f = complete_framework(rational_points(random.Random(1), 7))
    with pytest.raises(PreconditionError):
        surgery1_apply(f, _site())
    with pytest.raises(BindingError):
        SurgerySite({"p": 1, "q": 1})
    g7 = surgery1_example_graph()
    f = make_framework(g7, sample_generic(7, random.Random(2)))
    with pytest.raises(BindingError):
        surgery1_apply(f, SurgerySite({"p": 6, "q": 7, "v2": 2, "v3": 3}))


def test_surgery2_verdict_detail():
    rng = random.Random(51)
    f1 = make_framework(Graph.complete(6), sample_generic(6, rng))
    f2 = make_framework(Graph.complete(6), sample_generic(6, rng))
    site = SurgerySite({"p": 1, "q": 2, "r": 3, "s": 4, "v1": 5, "v4": 6})
    v = surgery2_verify(f1, f2, site)
    assert v.preconditions_ok and len(v.detail) == 6
    assert v.dim_before == v.dim_after == 6
    bad = make_framework(Graph.complete(6), Configuration([(0, 0), (1, 0), (3, 5), (2, 7), (2, 0), (-4, 1)]))
    assert not surgery2_verify(bad, f2, site).preconditions_ok


def test_planes():
    pl = plane_through([(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    assert pl.contains((5, -3, 1)) and not pl.contains((0, 0, 0))
    with pytest.raises(DegenerateError):
        plane_through([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    x = meet_planes([plane_through([(0, 0, 0), (1, 0, 0), (0, 1, 0)]),
                     plane_through([(0, 0, 0), (0, 1, 0), (0, 0, 1)]),
                     plane_through([(0, 0, 0), (1, 0, 0), (0, 0, 1)])])
    assert tuple(x) == (0, 0, 0)


def test_surgery3d_on_and_off_plane():
    rng = random.Random(61)
    site = SurgerySite(SURGERY3D_ROLES)
    for height, expected in ((0, (1, 1)), (3, (0, 0))):
        for _ in range(3):
            f1, hub = surgery3d_example(rng, apex_height=height)
            f2, v = surgery3d_verify(f1, site, SURGERY3D_PAIRS)
            assert v.detail["v1 lies in the triangle plane"] is (height == 0)
            assert (v.dim_before, v.dim_after) == expected
            assert tuple(f2.point(10)) == tuple(Fraction(x) for x in hub)


def test_triangle_cancellation_zero():
    rng = random.Random(71)
    site = SurgerySite(SURGERY3D_ROLES)
    f1, hub = surgery3d_example(rng)
    res = triangle_cancellation(f1, site, hub)
    assert res and all(x == 0 for r in res for x in r)


def test_surgery3d_rejects_bad_pairs():
    f1, _ = surgery3d_example(random.Random(3))
    site = SurgerySite(SURGERY3D_ROLES)
    with pytest.raises(BindingError):
        surgery3d_verify(f1, site, (((1, 4), (1, 5)), ((2, 6), (2, 7)), ((1, 4), (3, 9))))
