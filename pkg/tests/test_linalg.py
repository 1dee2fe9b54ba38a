import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stressforge.linalg import (
    ModularBasis,
    RationalMatrix,
    echelon,
    kernel_basis,
    primitive,
    random_prime,
    rank,
    rank_mod_p,
    solve,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def low_rank(rows):
    # make dependent rows likely: append combinations of the first rows
    if len(rows) >= 2:
        rows = rows + [[a + 2 * b for a, b in zip(rows[0], rows[1])]]
    return rows


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    rows = low_rank(rows)
    assert rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_is_kernel_and_complete(rows):
    rows = low_rank(rows)
    A = RationalMatrix(rows)
    kb = kernel_basis(A)
    assert kb.dimension == A.cols - rank(rows)
    for v in kb.vectors:
        assert all(x == 0 for x in A.apply(v))
        assert primitive(v) == tuple(v)
    if kb.vectors:
        assert rank([list(v) for v in kb.vectors]) == kb.dimension


def test_kernel_canonical_vector_frozen():
    # square K4 equilibrium matrix; the kernel vector is fixed by the canonical form
    from stressforge.core import complete_framework
    from stressforge.stress import equilibrium_matrix

    A = equilibrium_matrix(complete_framework([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert list(kernel_basis(A).vectors) == [(1, -1, 1, 1, -1, 1)]


def test_echelon_pivots_and_rank_deficient():
    rows, piv = echelon([[1, 2, 3], [2, 4, 6], [0, 0, 1]], 3)
    assert piv == [0, 2]
    assert len(rows) == 2


def test_solve_consistent_and_inconsistent():
    A = RationalMatrix([[1, 1], [1, -1]])
    assert solve(A, [3, 1]) == (Fraction(2), Fraction(1))
    B = RationalMatrix([[1, 1], [2, 2]])
    assert solve(B, [1, 3]) is None


def test_modular_rank_never_overestimates():
    rng = random.Random(7)
    agree = 0
    for _ in range(100):
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(6)] for _ in range(4)]
        rows.append([a - b for a, b in zip(rows[0], rows[1])])
        p = random_prime(rng)
        r, rp = rank(rows), rank_mod_p(rows, p)
        assert rp <= r
        agree += rp == r
    assert agree >= 99


def test_small_prime_can_underestimate():
    # 3 * 5 - 1 * 0 = 15, which vanishes mod 3 and mod 5
    rows = [[3, 0], [1, 5]]
    assert rank(rows) == 2
    assert rank_mod_p(rows, 5) == 1


def test_modular_basis_incremental():
    p = 1_000_003
    b = ModularBasis(p)
    assert b.add([1, 0, 2]) is False
    assert b.add([0, 1, 1]) is False
    c = b.copy()
    assert c.add([1, 1, 3]) is True
    assert c.add([0, 0, 1]) is False
    assert len(b.vectors) == 2
