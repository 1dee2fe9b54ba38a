"""Sign vectors of stress spaces and the fiber equivalence test.

A stress space of dimension k is parametrized by coefficients c in Q^k
against its canonical basis; edge e then carries the linear functional
``c -> sum_i c_i * basis_i[e]``.  The attainable sign vectors (covectors)
are the faces of the central arrangement of those functionals.

Two fibers are called equivalent here when they have the same dimension and
the same covector set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .core import Edge, Framework, StressForgeError, UnsupportedDimensionError, sign
from .linalg import echelon, kernel_basis, RationalMatrix
from .stress import StressSpace, self_stress_space

SignVector = tuple[int, ...]

MAX_ARRANGEMENT_DIM = 3

_SYMBOL = {1: "+", -1: "-", 0: "0"}


def format_sign_vector(s: SignVector) -> str:
    return "".join(_SYMBOL[x] for x in s)


def parse_sign_vector(text: str) -> SignVector:
    inverse = {v: k for k, v in _SYMBOL.items()}
    return tuple(inverse[ch] for ch in text)


class GraphMismatchError(StressForgeError):
    pass


@dataclass(frozen=True)
class FiberSignature:
    edges: tuple[Edge, ...]
    dimension: int
    covectors: frozenset[SignVector]
    zero_edges: frozenset[Edge]

    def sorted_covectors(self) -> list[str]:
        return sorted(format_sign_vector(s) for s in self.covectors)


# --- arrangement faces -------------------------------------------------------

def _null_space(rows: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    kb = kernel_basis(RationalMatrix(rows, dim))
    return [tuple(Fraction(x) for x in v) for v in kb.vectors]


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _face_covectors(functionals: Sequence[Sequence[Fraction]], basis: list) -> set[SignVector]:
    """All covectors of the arrangement restricted to span(basis).

    Recursion on dimension: the lower-dimensional faces are the faces of each
    hyperplane; the open cells are obtained from each facet by stepping off
    its hyperplane to either side, which only changes the signs of the
    functionals proportional to that hyperplane.
    """
    local = [tuple(_dot(f, v) for v in basis) for f in functionals]
    k = len(basis)
    if k == 0 or not any(any(g) for g in local):
        return {tuple(0 for _ in functionals)}
    if k == 1:
        s = tuple(sign(g[0]) for g in local)
        return {tuple(0 for _ in s), s, tuple(-x for x in s)}
    hyperplanes: list[tuple[Fraction, ...]] = []
    for g in local:
        if any(g):
            lead = next(x for x in g if x != 0)
            key = tuple(x / lead for x in g)
            if key not in hyperplanes:
                hyperplanes.append(key)
    out: set[SignVector] = set()
    for h in hyperplanes:
        inside = [
            tuple(sum((c * b[i] for c, b in zip(coef, basis)), Fraction(0)) for i in range(len(basis[0])))
            for coef in _null_space([h], k)
        ]
        faces = _face_covectors(functionals, inside)
        out |= faces
        # functionals that are not identically zero on the hyperplane
        alive = [any(_dot(f, v) != 0 for v in inside) for f in functionals]
        off = next(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k) if h[i] != 0)
        step = [sign(_dot(g, off)) for g in local]
        for face in faces:
            if any(face[i] == 0 for i in range(len(face)) if alive[i]):
                continue
            for s in (1, -1):
                out.add(tuple(x if alive[i] else s * step[i] for i, x in enumerate(face)))
    return out


def arrangement_covectors(vectors: Sequence[Sequence], max_dim: int = MAX_ARRANGEMENT_DIM) -> set[SignVector]:
    """Covectors of the row space spanned by ``vectors`` (each of length m)."""
    vectors = [tuple(Fraction(x) for x in v) for v in vectors]
    k = len(vectors)
    if k == 0:
        return set()
    m = len(vectors[0])
    if k > max_dim:
        raise UnsupportedDimensionError(f"covector enumeration supports dimension <= {max_dim}, got {k}")
    functionals = [tuple(v[e] for v in vectors) for e in range(m)]
    identity = [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
    return _face_covectors(functionals, identity)


def _blocks(vectors: Sequence[Sequence], m: int) -> list[list[int]]:
    """Edge blocks of the direct-sum decomposition of the row space.

    Two edges share a block when a reduced-echelon basis row is nonzero on
    both; this is the connected-component decomposition of the matroid.
    """
    rows, _ = echelon(vectors, m)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        support = [e for e, x in enumerate(row) if x]
        for e in support[1:]:
            parent[find(e)] = find(support[0])
    groups: dict[int, list[int]] = {}
    for row in rows:
        for e, x in enumerate(row):
            if x:
                groups.setdefault(find(e), []).append(e)
    return [sorted(set(g)) for g in sorted(groups.values())]


def covectors(space: StressSpace) -> set[SignVector]:
    """Exact covector set of a stress space.

    Dimension up to 3 is handled by arrangement enumeration; larger spaces
    are accepted when they split into blocks that are each either small or
    the full coordinate space of their edges (the free edges of coincident
    vertices), in which case the covector set is the product.
    """
    m = space.framework.graph.m
    vecs = [b.weights for b in space.basis]
    k = len(vecs)
    if k == 0:
        return {tuple([0] * m)}
    if k <= MAX_ARRANGEMENT_DIM:
        return arrangement_covectors(vecs)
    blocks = _blocks(vecs, m)
    rows, _ = echelon(vecs, m)
    per_block = []
    for block in blocks:
        brows = [tuple(r[e] for e in block) for r in rows if any(r[e] for e in block)]
        if len(brows) == len(block):
            per_block.append((block, [tuple(s) for s in product((-1, 0, 1), repeat=len(block))]))
        elif len(brows) <= MAX_ARRANGEMENT_DIM:
            per_block.append((block, sorted(arrangement_covectors(brows))))
        else:
            raise UnsupportedDimensionError(
                f"stress space of dimension {k} has a block of dimension {len(brows)} on "
                f"{len(block)} edges; only dimension <= {MAX_ARRANGEMENT_DIM} or free blocks are supported"
            )
    out = set()
    for choice in product(*(signs for _, signs in per_block)):
        s = [0] * m
        for (block, _), part in zip(per_block, choice):
            for e, x in zip(block, part):
                s[e] = x
        out.add(tuple(s))
    return out


def signature_of_space(space: StressSpace) -> FiberSignature:
    covs = frozenset(covectors(space))
    edges = space.framework.edges
    zero = frozenset(e for i, e in enumerate(edges) if all(b.weights[i] == 0 for b in space.basis))
    return FiberSignature(edges, space.dimension, covs, zero)


def fiber_signature(f: Framework) -> FiberSignature:
    return signature_of_space(self_stress_space(f))


def fibers_equivalent(a: FiberSignature, b: FiberSignature) -> bool:
    if a.edges != b.edges:
        raise GraphMismatchError("fiber signatures belong to different graphs")
    return a.dimension == b.dimension and a.covectors == b.covectors


def brute_force_covectors(vectors: Sequence[Sequence], radius: int = 6) -> set[SignVector]:
    """Sampling oracle for small dimensions (k <= 2).

    Evaluates sign vectors on an integer grid of coefficients and on every
    line where one functional vanishes, which hits every face when the grid
    is fine enough compared with the functionals.
    """
    vectors = [tuple(Fraction(x) for x in v) for v in vectors]
    k = len(vectors)
    m = len(vectors[0]) if vectors else 0
    functionals = [tuple(v[e] for v in vectors) for e in range(m)]

    def sv(c):
        return tuple(sign(sum((a * b for a, b in zip(f, c)), Fraction(0))) for f in functionals)

    out = set()
    grid = range(-radius, radius + 1)
    for c in product(grid, repeat=k):
        out.add(sv(c))
    if k == 2:
        for f in functionals:
            if any(f):
                d = (-f[1], f[0])
                for t in (1, -1):
                    out.add(sv((t * d[0], t * d[1])))
                    # tiny rotations off the kernel line of f
                    for eps in (Fraction(1, 10**6), Fraction(-1, 10**6)):
                        out.add(sv((t * d[0] + eps * f[0], t * d[1] + eps * f[1])))
    return out


def sign_vectors_of(values: Iterable) -> SignVector:
    return tuple(sign(x) for x in values)
