import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from stressforge.core import Configuration, Graph, UnsupportedDimensionError, complete_framework, make_framework, sign
from stressforge.signature import (
    GraphMismatchError,
    arrangement_covectors,
    brute_force_covectors,
    fiber_signature,
    fibers_equivalent,
    format_sign_vector,
    parse_sign_vector,
)
from stressforge.stress import self_stress_space

from .conftest import rational_points


def _ray_sum_covectors(vectors):
    """Oracle for k = 3: sign vectors at sums of at most three rays, where the
    rays are the intersections of two planes f = 0, g = 0 (both directions).
    Every face of the spherical arrangement is a convex polygon; a fan
    triangulation from one of its vertices places an interior point at a sum
    of at most three of its vertex rays."""
    m = len(vectors[0])
    funcs = [tuple(Fraction(v[e]) for v in vectors) for e in range(m)]

    def sv(c):
        return tuple(sign(sum(a * b for a, b in zip(f, c))) for f in funcs)

    def cross(a, b):
        return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])

    rays = set()
    for f, g in combinations(funcs, 2):
        c = cross(f, g)
        if any(c):
            scale = max(abs(x) for x in c)
            c = tuple(x / scale for x in c)
            rays.add(c)
            rays.add(tuple(-x for x in c))
    rays = sorted(rays)
    out = {tuple([0] * m)}
    for r in range(1, 4):
        for group in combinations(rays, r):
            out.add(sv(tuple(sum(x) for x in zip(*group))))
    return out


def test_format_roundtrip():
    assert parse_sign_vector(format_sign_vector((1, 0, -1))) == (1, 0, -1)


def test_k1_is_line():
    covs = arrangement_covectors([(1, -2, 0)])
    assert covs == {(0, 0, 0), (1, -1, 0), (-1, 1, 0)}


@pytest.mark.parametrize("seed", range(8))
def test_k2_matches_grid_oracle(seed):
    rng = random.Random(seed)
    vecs = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(2)]
    if any(a * 0 for a in vecs[0]) or vecs[0] == [0] * 6:
        vecs[0][0] = 1
    assert arrangement_covectors(vecs) == brute_force_covectors(vecs, radius=8)


K5_CASES = {
    "generic": None,
    "three collinear": [(0, 0), (1, 0), (3, 0), (1, 2), (-2, 5)],
    "two parallel pairs": [(0, 0), (2, 0), (1, 3), (3, 3), (5, -1)],
    "fifth on a diagonal": [(0, 0), (4, 0), (4, 4), (0, 4), (1, 3)],
}


@pytest.mark.parametrize("case", sorted(K5_CASES))
def test_k3_k5_fiber_matches_ray_oracle(case):
    pts = K5_CASES[case] or rational_points(random.Random(99), 5)
    space = self_stress_space(complete_framework(pts))
    vecs = [b.weights for b in space.basis]
    exact = arrangement_covectors(vecs)
    assert exact == _ray_sum_covectors(vecs)


def test_negation_and_zero():
    rng = random.Random(3)
    sig = fiber_signature(complete_framework(rational_points(rng, 5)))
    assert all(tuple(-x for x in s) in sig.covectors for s in sig.covectors)
    assert tuple([0] * 10) in sig.covectors


def test_free_block_dimension_beyond_three():
    # four coincident points: the six loose edges carry an arbitrary stress
    f = complete_framework([(0, 0)] * 4 + [(1, 0)])
    sig = fiber_signature(f)
    assert sig.dimension >= 4
    loose = [i for i, e in enumerate(sig.edges) if e[1] <= 4]
    for pattern in product((-1, 0, 1), repeat=2):
        assert any(tuple(s[i] for i in loose[:2]) == pattern for s in sig.covectors)


def test_non_free_high_dimension_rejected():
    rng = random.Random(5)
    with pytest.raises(UnsupportedDimensionError):
        fiber_signature(complete_framework(rational_points(rng, 6)))


def test_equivalence_needs_same_graph():
    a = fiber_signature(complete_framework([(0, 0), (1, 0), (1, 1), (0, 1)]))
    b = fiber_signature(make_framework(Graph(4, [(1, 2), (2, 3)]), Configuration([(0, 0), (1, 0), (1, 1), (0, 1)])))
    with pytest.raises(GraphMismatchError):
        fibers_equivalent(a, b)


def test_square_and_kite_differ_but_squares_agree():
    sq = fiber_signature(complete_framework([(0, 0), (1, 0), (1, 1), (0, 1)]))
    sq2 = fiber_signature(complete_framework([(0, 0), (3, 0), (3, 2), (0, 2)]))
    tri = fiber_signature(complete_framework([(0, 0), (3, 0), (1, 1), (0, 3)]))
    assert fibers_equivalent(sq, sq2)
    assert not fibers_equivalent(sq, tri)


def test_zero_edges_reported():
    sig = fiber_signature(complete_framework([(0, 0), (1, 0), (2, 0), (0, 1)]))
    assert sig.zero_edges == {(1, 4), (2, 4), (3, 4)}
