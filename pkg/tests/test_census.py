import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stressforge.census.arrangement import build_arrangement, line_through_points
from stressforge.census.complex import CellComplex, UnionFind
from stressforge.census.formal import (
    DeeperDegeneracyError,
    FormalConfiguration,
    NotNormalizableError,
    chirotope4,
    codimension4,
    normalize_formal,
    normalize_with_map,
)
from stressforge.census.lambda4 import arc_groups, classify_k4, collinear_tag, lambda4_arrangement
from stressforge.census.tables import (
    UnsupportedNError,
    descriptor_table,
    point_types,
    set_partitions,
    strata_table,
)
from stressforge.core import Configuration, complete_framework
from stressforge.signature import fiber_signature, fibers_equivalent

coord = st.fractions(min_value=-20, max_value=20, max_denominator=6)
point = st.tuples(coord, coord)


def test_formal_examples():
    assert normalize_formal([(0, 0), (2, 0), (2, 2), (2, 4)]) == FormalConfiguration("PlusChart", (1, 1))
    fc = normalize_formal([(0, 0), (1, 0), (0, 1), (Fraction(1, 3), 1)])
    assert fc.chart == "DegeneratePlus" and fc.params == (Fraction(1, 3),)


def test_formal_errors():
    with pytest.raises(NotNormalizableError):
        normalize_formal([(0, 0), (0, 0), (1, 1), (2, 3)])
    with pytest.raises(NotNormalizableError):
        normalize_formal([(0, 0), (1, 0), (2, 0), (3, 0)])


@settings(max_examples=200, deadline=None)
@given(st.lists(point, min_size=4, max_size=4))
def test_normal_form_is_proper_affine_image(pts):
    try:
        fc, L, t = normalize_with_map(pts)
    except NotNormalizableError:
        return
    det = L[0][0] * L[1][1] - L[0][1] * L[1][0]
    assert det > 0
    image = [tuple(L[i][0] * p[0] + L[i][1] * p[1] + t[i] for i in range(2)) for p in pts]
    assert image == [tuple(v) for v in fc.vertices()]
    # proper affine maps keep orientations, so the chirotope survives
    assert chirotope4(image) == chirotope4(pts)


@settings(max_examples=100, deadline=None)
@given(st.lists(point, min_size=4, max_size=4))
def test_classify_matches_fiber(pts):
    if codimension4(pts) > 1 or len(set(pts)) < 4:
        return
    try:
        cid = classify_k4(Configuration(pts))
    except (NotNormalizableError, DeeperDegeneracyError):
        return
    cell = lambda4_arrangement().cells[cid]
    a = fiber_signature(complete_framework(pts))
    b = fiber_signature(complete_framework(cell.sample.vertices()))
    assert fibers_equivalent(a, b)


def test_lambda4_structure():
    cx = lambda4_arrangement()
    assert len(cx.of_dim(2)) == 14 and len(cx.of_dim(1)) == 24 and len(cx.of_dim(0)) == 12
    assert cx.euler_characteristic() == 2
    assert cx.adjacency_is_symmetric()
    groups = arc_groups(cx)
    assert sorted(len(v) for v in groups.values()) == [6, 6, 6, 6]
    # every arc separates two distinct faces
    for arc in cx.of_dim(1):
        faces = [c for c in arc.adjacent if c.startswith("face:")]
        assert len(set(faces)) == 2


def test_lambda4_faces_are_realizable_sign_patterns():
    ids = {c.id for c in lambda4_arrangement().of_dim(2)}
    assert "face:+-+-" not in ids and "face:-+-+" not in ids
    assert len(ids) == 14


def test_classify_examples():
    assert classify_k4(Configuration([(0, 0), (1, 0), (1, 1), (0, 1)])) == "face:++++"
    cid = classify_k4(Configuration([(0, 0), (1, 0), (2, 0), (0, 1)]))
    assert cid.startswith("arc:0")
    assert collinear_tag(cid) == "v1v2v3 collinear"
    with pytest.raises(DeeperDegeneracyError):
        classify_k4(Configuration([(0, 0), (1, 0), (2, 0), (0, 0)]))


def test_classification_is_relabel_consistent():
    # permuting labels permutes the chirotope, and the cell follows the chirotope
    pts = [(0, 0), (3, 1), (1, 4), (-2, 2)]
    for perm in permutations(range(4)):
        q = [pts[i] for i in perm]
        cid = classify_k4(Configuration(q))
        signs = "".join("+" if s > 0 else "-" for s in chirotope4(q))
        assert cid == f"face:{signs}"


def test_arrangement_three_lines():
    lines = [line_through_points((0, 0), (1, 0)), line_through_points((0, 0), (0, 1)),
             line_through_points((1, 0), (0, 1))]
    arr = build_arrangement(lines)
    assert (len(arr.vertices), len(arr.edges), len(arr.regions)) == (3, 9, 7)


def test_union_find_and_complex():
    uf = UnionFind()
    for x in "abcd":
        uf.add(x)
    uf.union("d", "b")
    uf.union("c", "d")
    assert uf.find("c") == "b"
    assert {k: sorted(v) for k, v in uf.classes().items()} == {"a": ["a"], "b": ["b", "c", "d"]}
    cx = CellComplex()
    assert cx.euler_characteristic() == 0


def test_set_partitions_bell_numbers():
    assert [len(set_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_order_type_counts():
    assert [len(point_types(c)) for c in (1, 2, 3, 4)] == [1, 1, 5, 50]


def test_small_tables():
    assert strata_table(2).counts == {2: 1, 4: 1}
    assert strata_table(3).counts == {2: 1, 4: 3, 5: 3, 6: 2}
    t4 = strata_table(4)
    assert t4.counts == {2: 1, 4: 7, 5: 18, 6: 24, 7: 24, 8: 14}
    assert descriptor_table(4).counts == t4.counts


def test_table_rejects_large_n():
    with pytest.raises(UnsupportedNError):
        strata_table(6)


def test_k4_top_strata_are_lambda4_faces():
    # the 14 general-position K4 types are exactly the 14 faces
    t4 = strata_table(4)
    assert t4.counts[8] == len(lambda4_arrangement().of_dim(2))
    assert t4.counts[7] == len(lambda4_arrangement().of_dim(1))


def test_random_generic_k4_hits_a_face():
    rng = random.Random(5)
    seen = set()
    for _ in range(300):
        pts = [(Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))) for _ in range(4)]
        if codimension4(pts) == 0 and len(set(pts)) == 4:
            seen.add(classify_k4(Configuration(pts)))
    assert seen <= {c.id for c in lambda4_arrangement().of_dim(2)}
    assert len(seen) == 14
