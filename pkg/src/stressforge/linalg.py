"""Exact rational matrices: rank, kernel basis, and a modular rank prefilter.

Elimination runs on integer rows (each row is scaled by the lcm of its
denominators first) and is fraction-free: pivots combine rows by
cross-multiplication and every row is divided by its content afterwards,
which keeps the integers small for the matrix sizes we meet (at most
about 24 x 21).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import StressForgeError


class BadPrimeError(StressForgeError):
    """The chosen prime divides a denominator; retry with another prime."""


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ValueError("matrix rows have different lengths")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def select_columns(self, cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[row[j] for j in cols] for row in self.entries], len(cols))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)


@dataclass(frozen=True)
class KernelBasis:
    ambient: int
    vectors: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide by the content and make the first nonzero entry positive."""
    g = math.gcd(*v) if v else 0
    if g == 0:
        return tuple(v)
    first = next(x for x in v if x != 0)
    if first < 0:
        g = -g
    return tuple(x // g for x in v)


def integer_vector(v: Sequence) -> tuple[int, ...]:
    """Clear denominators of a rational vector and return its primitive form."""
    (row,) = _integer_rows([v])
    return primitive(row)


def echelon(rows: Sequence[Sequence], cols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free reduced echelon form.

    Returns the nonzero rows and their pivot columns.  Pivot rows are chosen
    as the first row (top-down) with a nonzero entry in the current column.
    """
    m = [r for r in _integer_rows(rows) if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(len(m)):
            if i == r or m[i][c] == 0:
                continue
            b = m[i][c]
            row = [a * x - b * y for x, y in zip(m[i], pr)]
            g = math.gcd(*row)
            m[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(A: RationalMatrix | Sequence[Sequence]) -> int:
    if isinstance(A, RationalMatrix):
        rows, cols = A.entries, A.cols
    else:
        rows, cols = A, (len(A[0]) if A else 0)
    return len(echelon(rows, cols)[1])


def kernel_basis(A: RationalMatrix) -> KernelBasis:
    """Canonical integer basis of ``{v : A v = 0}``.

    One vector per non-pivot column ``f``: it has a positive entry at ``f``,
    zeros at the other free columns, and is primitive (content 1, first
    nonzero entry positive).
    """
    m, pivots = echelon(A.entries, A.cols)
    free = [c for c in range(A.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        # v[f] = L, v[pivot_i] = -L * m[i][f] / m[i][pivot_i]
        L = math.lcm(*(abs(m[i][p]) for i, p in enumerate(pivots))) if pivots else 1
        v = [0] * A.cols
        v[f] = L
        for i, p in enumerate(pivots):
            v[p] = -L * m[i][f] // m[i][p]
        basis.append(primitive(v))
    return KernelBasis(A.cols, tuple(basis))


def solve(A: RationalMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(A.entries, b)]
    m, pivots = echelon(aug, A.cols + 1)
    if A.cols in pivots:
        return None
    x = [Fraction(0)] * A.cols
    for i, p in enumerate(pivots):
        x[p] = Fraction(m[i][A.cols], m[i][p])
    return tuple(x)


# --- modular prefilter -------------------------------------------------------

def reduce_mod(x: Fraction, p: int) -> int:
    den = x.denominator % p
    if den == 0:
        raise BadPrimeError(f"prime {p} divides denominator {x.denominator}")
    return x.numerator * pow(den, -1, p) % p


def rank_mod_p(A: RationalMatrix | Sequence[Sequence], prime: int) -> int:
    """Rank of ``A`` over GF(prime); never exceeds the rational rank."""
    rows = A.entries if isinstance(A, RationalMatrix) else A
    m = [[reduce_mod(Fraction(x), prime) for x in row] for row in rows]
    return _rank_mod_rows(m, prime)


def _rank_mod_rows(m: list[list[int]], p: int) -> int:
    if not m:
        return 0
    cols = len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        pr = [x * inv % p for x in m[r]]
        m[r] = pr
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def random_prime(rng: random.Random, bits: int = 62) -> int:
    from sympy import nextprime

    return int(nextprime(rng.getrandbits(bits) | (1 << (bits - 1))))


class ModularBasis:
    """Incremental column space over GF(p), used by the subgraph search.

    ``add`` reduces a new column against the stored ones and keeps it when it
    is independent; it reports whether the column was dependent.
    """

    __slots__ = ("p", "pivots", "vectors")

    def __init__(self, p: int, pivots=(), vectors=()):
        self.p = p
        self.pivots = list(pivots)
        self.vectors = list(vectors)

    def copy(self) -> "ModularBasis":
        return ModularBasis(self.p, self.pivots, self.vectors)

    def add(self, column: Sequence[int]) -> bool:
        p = self.p
        v = list(column)
        for piv, b in zip(self.pivots, self.vectors):
            f = v[piv]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return True
        inv = pow(v[lead], -1, p)
        self.pivots.append(lead)
        self.vectors.append([x * inv % p for x in v])
        return False
