"""Equilibrium matrices, self-stress spaces, loads and atoms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .core import (
    Configuration,
    DegenerateError,
    Edge,
    Framework,
    Graph,
    Load,
    StressForgeError,
    complete_framework,
    cross,
    edge,
    make_framework,
    orient,
    sub,
)
from .linalg import KernelBasis, RationalMatrix, echelon, integer_vector, kernel_basis, rank, solve


@dataclass(frozen=True)
class StressAssignment:
    """Edge weights ``w_ij``; pairs that are not edges carry weight zero."""

    graph: Graph
    weights: tuple[Fraction, ...]  # aligned with graph.edges

    def __getitem__(self, pair) -> Fraction:
        e = edge(*pair)
        try:
            return self.weights[self.graph.edges.index(e)]
        except ValueError:
            return Fraction(0)

    def as_dict(self) -> dict[Edge, Fraction]:
        return dict(zip(self.graph.edges, self.weights))

    def is_zero(self) -> bool:
        return not any(self.weights)

    def __add__(self, other: "StressAssignment") -> "StressAssignment":
        return stress_from_dict(self.graph, _merge(self.as_dict(), other.as_dict(), 1))

    def __sub__(self, other: "StressAssignment") -> "StressAssignment":
        return stress_from_dict(self.graph, _merge(self.as_dict(), other.as_dict(), -1))

    def __rmul__(self, t) -> "StressAssignment":
        t = Fraction(t)
        return StressAssignment(self.graph, tuple(t * w for w in self.weights))

    def labels(self) -> dict[Edge, str]:
        """``cable`` for negative, ``strut`` for positive, ``zero`` otherwise."""
        return {
            e: "cable" if w < 0 else "strut" if w > 0 else "zero"
            for e, w in self.as_dict().items()
        }


def _merge(a: dict, b: dict, s: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + s * v
    return out


def stress_from_dict(graph: Graph, weights: Mapping) -> StressAssignment:
    """Build a stress on ``graph``; weights on non-edges must be zero."""
    ws = {edge(*k): Fraction(v) for k, v in weights.items()}
    stray = [e for e, w in ws.items() if w != 0 and e not in graph.edges]
    if stray:
        raise StressForgeError(f"nonzero stress on non-edges {stray}")
    return StressAssignment(graph, tuple(ws.get(e, Fraction(0)) for e in graph.edges))


@dataclass(frozen=True)
class StressSpace:
    framework: Framework
    basis: tuple[StressAssignment, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [b.weights for b in self.basis]


@dataclass(frozen=True)
class Atom:
    vertices: tuple[int, int, int, int]
    stress: StressAssignment


def equilibrium_matrix(f: Framework) -> RationalMatrix:
    """The (d*n) x m matrix whose kernel is W(G, P).

    Rows are vertex-major then coordinate; columns follow the sorted edges.
    Column {i, j} holds p_j - p_i in the rows of vertex i and p_i - p_j in
    the rows of vertex j.
    """
    d, n = f.d, f.n
    rows = [[Fraction(0)] * f.graph.m for _ in range(d * n)]
    for col, (i, j) in enumerate(f.edges):
        diff = sub(f.point(j), f.point(i))
        for k in range(d):
            rows[(i - 1) * d + k][col] = diff[k]
            rows[(j - 1) * d + k][col] = -diff[k]
    return RationalMatrix(rows, f.graph.m)


def stress_dimension(f: Framework) -> int:
    return f.graph.m - rank(equilibrium_matrix(f))


def self_stress_space(f: Framework) -> StressSpace:
    kb: KernelBasis = kernel_basis(equilibrium_matrix(f))
    basis = tuple(
        StressAssignment(f.graph, tuple(Fraction(x) for x in v)) for v in kb.vectors
    )
    return StressSpace(f, basis)


def residual(f: Framework, w: StressAssignment) -> list[tuple[Fraction, ...]]:
    """Per-vertex sum of w_ij (p_j - p_i)."""
    out = [[Fraction(0)] * f.d for _ in range(f.n)]
    for (i, j), wij in w.as_dict().items():
        if wij == 0:
            continue
        diff = sub(f.point(j), f.point(i))
        for k in range(f.d):
            out[i - 1][k] += wij * diff[k]
            out[j - 1][k] -= wij * diff[k]
    return [tuple(r) for r in out]


def is_self_stress(f: Framework, w: StressAssignment) -> bool:
    return all(x == 0 for r in residual(f, w) for x in r)


def resolves_load(f: Framework, w: StressAssignment, load: Load) -> bool:
    if len(load.vectors) != f.n or any(len(v) != f.d for v in load.vectors):
        raise StressForgeError("load shape does not match the framework")
    res = residual(f, w)
    return all(fi + ri == 0 for fv, rv in zip(load.vectors, res) for fi, ri in zip(fv, rv))


# --- atoms -------------------------------------------------------------------

def _k4_generator(points: Sequence[Sequence], labels=(1, 2, 3, 4)) -> StressAssignment:
    fw = complete_framework(points)
    space = self_stress_space(fw)
    if space.dimension != 1:
        raise DegenerateError(f"K4 stress space has dimension {space.dimension}, expected 1")
    g = Graph(max(labels), [edge(labels[a - 1], labels[b - 1]) for a, b in fw.edges])
    mapping = {
        edge(labels[a - 1], labels[b - 1]): w for (a, b), w in zip(fw.edges, space.basis[0].weights)
    }
    return stress_from_dict(g, mapping)


def _check_general_position_2d(points) -> None:
    for a, b in combinations(range(4), 2):
        if points[a] == points[b]:
            raise DegenerateError(f"points {a + 1} and {b + 1} coincide")
    for a, b, c in combinations(range(4), 3):
        if orient(points[a], points[b], points[c]) == 0:
            raise DegenerateError(f"points {a + 1}, {b + 1}, {c + 1} are collinear")


def atom_stress(points: Sequence[Sequence], labels=(1, 2, 3, 4)) -> Atom:
    """The atom of four planar points in general position."""
    pts = Configuration(points, 2).points
    if len(pts) != 4:
        raise StressForgeError("an atom needs exactly four points")
    _check_general_position_2d(pts)
    return Atom(tuple(labels), _k4_generator(pts, labels))


def plane_atom_3d(points: Sequence[Sequence], labels=(1, 2, 3, 4)) -> Atom:
    """The atom of four coplanar points in space."""
    pts = Configuration(points, 3).points
    if len(pts) != 4:
        raise StressForgeError("a plane atom needs exactly four points")
    normal = _plane_normal(pts)
    if normal is None:
        raise DegenerateError("points do not span a plane")
    d = [sum(n * (x - y) for n, x, y in zip(normal, p, pts[0])) for p in pts]
    if any(d):
        raise DegenerateError("points are not coplanar; the stress space is zero")
    flat = _planar_coordinates(pts, normal)
    _check_general_position_2d(flat)
    return Atom(tuple(labels), _k4_generator(pts, labels))


def _plane_normal(pts):
    for a, b, c in combinations(pts, 3):
        nrm = cross(sub(b, a), sub(c, a))
        if any(nrm):
            return nrm
    return None


def _planar_coordinates(pts, normal):
    """Project onto the coordinate plane where the normal is largest (affine, exact)."""
    k = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != k]
    return [tuple(p[i] for i in keep) for p in pts]


# --- atom decomposition ------------------------------------------------------

def atom_decomposition(f: Framework, w: StressAssignment) -> list[tuple[Atom, Fraction]]:
    """Write a self stress of K_n as a combination of atoms.

    Atoms of all 4-subsets are considered in lexicographic order; a subset in
    degenerate position is skipped.  A maximal independent family is picked
    greedily in that order, so each stress gets one well-defined set of
    coefficients.
    """
    if f.d != 2:
        raise StressForgeError("atom decomposition is planar")
    if f.graph.edges != Graph.complete(f.n).edges:
        raise StressForgeError("atom decomposition needs a complete graph")
    if not is_self_stress(f, w):
        raise StressForgeError("the given weights are not a self stress")
    pos = {e: k for k, e in enumerate(f.edges)}
    atoms, columns = [], []
    for quad in combinations(range(1, f.n + 1), 4):
        try:
            atom = atom_stress([f.point(v) for v in quad], quad)
        except DegenerateError:
            continue
        col = [Fraction(0)] * f.graph.m
        for e, val in atom.stress.as_dict().items():
            col[pos[e]] = val
        trial = columns + [col]
        if len(echelon(list(zip(*trial)), len(trial))[1]) == len(trial):
            atoms.append(atom)
            columns.append(col)
    if not columns:
        if w.is_zero():
            return []
        raise DegenerateError("no atom exists at this configuration")
    A = RationalMatrix(list(zip(*columns)), len(columns))
    coeffs = solve(A, w.weights)
    if coeffs is None:
        raise DegenerateError("the atoms at this configuration do not span the stress")
    return list(zip(atoms, coeffs))


def recombine(f: Framework, terms: Sequence[tuple[Atom, Fraction]]) -> StressAssignment:
    total = {e: Fraction(0) for e in f.edges}
    for atom, c in terms:
        for e, v in atom.stress.as_dict().items():
            total[e] += c * v
    return stress_from_dict(f.graph, total)


def relabel_framework(f: Framework, perm: Mapping[int, int]) -> Framework:
    """Vertex ``v`` of ``f`` becomes vertex ``perm[v]``."""
    pts = [None] * f.n
    for v in range(1, f.n + 1):
        pts[perm[v] - 1] = f.point(v)
    g = Graph(f.n, [edge(perm[i], perm[j]) for i, j in f.edges])
    return make_framework(g, Configuration(pts, f.d))


def space_vectors_span(vectors: Sequence[Sequence]) -> int:
    return rank([list(v) for v in vectors]) if vectors else 0


def canonical_vector(values: Sequence) -> tuple[int, ...]:
    return integer_vector(values)
