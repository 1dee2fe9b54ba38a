import random
from fractions import Fraction

import pytest

from stressforge.core import Configuration, DegenerateError, StressForgeError
from stressforge.geometry import (
    CONDITION_ARITY,
    ConditionId,
    check_condition,
    circle_point,
    collinear,
    evaluate_condition,
    in_general_position,
    intersection,
    line_through,
    meet,
    on_conic,
    pascal_permutations,
    pascal_witnesses,
    random_affine,
    sample_off_condition,
    sample_on_condition,
    universal_set,
    CapExceededError,
)


def test_projective_basics():
    l1 = line_through((0, 0), (1, 1))
    l2 = line_through((0, 1), (1, 0))
    p = intersection(l1, l2)
    assert p.affine() == (Fraction(1, 2), Fraction(1, 2))
    par = meet((0, 0), (1, 0), (0, 1), (1, 1))
    assert par.at_infinity
    with pytest.raises(DegenerateError):
        line_through((1, 2), (1, 2))
    with pytest.raises(DegenerateError):
        meet((0, 0), (1, 0), (2, 0), (3, 0))


def test_conic_predicate_sympy_oracle():
    import sympy

    rng = random.Random(11)
    for _ in range(20):
        pts = [(Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))) for _ in range(6)]
        x, y = sympy.symbols("x y")
        rows = [[px * px, px * py, py * py, px, py, 1] for px, py in pts]
        expected = sympy.Matrix(rows).det() == 0
        assert on_conic(pts) == expected


def test_circle_points_on_conic():
    f = random_affine(random.Random(2))
    pts = [f(circle_point(Fraction(t, 3))) for t in range(6)]
    assert on_conic(pts)


def test_pascal_has_sixty_orderings():
    perms = pascal_permutations()
    assert len(perms) == 60 and len(set(perms)) == 60


def test_pascal_regular_hexagon_parallel_sides():
    # regular hexagon: opposite sides parallel, so the Pascal line is at infinity
    hexagon = [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)]
    assert on_conic(hexagon)
    w = pascal_witnesses(hexagon)[0]
    assert w.order == (1, 2, 3, 4, 5, 6)
    assert w.collinear and all(p.at_infinity for p in w.points)


@pytest.mark.parametrize("tag", sorted(CONDITION_ARITY))
def test_samplers_on_and_off(tag):
    rng = random.Random(hash(tag) % 1000)
    n = CONDITION_ARITY[tag]
    for _ in range(5):
        assert check_condition(ConditionId(tag), sample_on_condition(tag, n, rng))
        assert not check_condition(ConditionId(tag), sample_off_condition(tag, n, rng))


def test_bindings_and_describe():
    cid = ConditionId("Collinear3", (4, 2, 7))
    assert cid.describe().startswith("v4, v2, v7")
    with pytest.raises(StressForgeError):
        ConditionId("Collinear3", (1, 1, 2))
    with pytest.raises(StressForgeError):
        ConditionId("Nope")
    with pytest.raises(StressForgeError):
        evaluate_condition(ConditionId("Collinear3", (1, 2, 9)), [(0, 0), (1, 1), (2, 2)])
    pts = [(5, 5), (0, 0), (1, 1), (2, 2)]
    assert check_condition(ConditionId("Collinear3", (2, 3, 4)), Configuration(pts))


def test_constructed_point_reported():
    rng = random.Random(8)
    conf = sample_on_condition("K7-ConstructedConcurrency", 7, rng)
    ok, built = evaluate_condition(ConditionId("K7-ConstructedConcurrency"), conf.points)
    assert ok and "p" in built
    p = built["p"]
    v = conf.points
    assert collinear(v[1], v[5], p) and collinear(v[2], v[6], p)


def test_universal_set_growth_and_cap():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
    u1 = universal_set(pts, 1)
    # the three diagonal points of a quadrangle
    assert len(u1.points) == 4 + 3
    assert {u.level for u in u1.points} == {0, 1}
    with pytest.raises(CapExceededError):
        universal_set(pts, 3)
    with pytest.raises(CapExceededError):
        universal_set(pts, 2, cap=1)


def test_general_position_helper():
    assert in_general_position([(0, 0), (1, 0), (0, 1)])
    assert not in_general_position([(0, 0), (1, 1), (2, 2)])
