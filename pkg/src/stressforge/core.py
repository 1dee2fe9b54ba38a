"""Exact scalars, graphs, point configurations and frameworks.

Every coordinate is a :class:`fractions.Fraction`; nothing in the package
ever touches a float when deciding a sign, a rank or an equality.
Vertex labels are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Rational = Fraction

Edge = tuple[int, int]
Point = tuple[Fraction, ...]


class StressForgeError(Exception):
    """Base class for domain errors (reported with exit status 1 by the CLI)."""


class DimensionMismatchError(StressForgeError):
    pass


class UnsupportedDimensionError(StressForgeError):
    pass


class DegenerateError(StressForgeError):
    """Raised when a construction needs general position and does not get it."""


def as_rational(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, float):
        raise TypeError(f"floating-point value {value!r} is not exact")
    if isinstance(value, str) and any(ch in value for ch in ".eE"):
        raise TypeError(f"decimal literal {value!r} is not accepted; write p/q")
    return Fraction(value)


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError(f"loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        normalized = set()
        for pair in edges:
            i, j = pair
            e = edge(int(i), int(j))
            if not (1 <= e[0] and e[1] <= n):
                raise ValueError(f"edge {e} uses a label outside 1..{n}")
            normalized.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(1, n + 1), 2))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def without(self, *removed: Edge) -> "Graph":
        drop = {edge(*e) for e in removed}
        return Graph(self.n, [e for e in self.edges if e not in drop])

    def __contains__(self, e) -> bool:
        return edge(*e) in self.edges


@dataclass(frozen=True)
class Configuration:
    d: int
    points: tuple[Point, ...]

    def __init__(self, points: Iterable[Sequence], d: int | None = None):
        pts = tuple(tuple(as_rational(c) for c in p) for p in points)
        if d is None:
            d = len(pts[0]) if pts else 2
        if d not in (2, 3):
            raise UnsupportedDimensionError(f"dimension {d} is not supported (only 2 and 3)")
        for p in pts:
            if len(p) != d:
                raise DimensionMismatchError(f"point {p} does not have {d} coordinates")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __getitem__(self, label: int) -> Point:
        """1-based access: ``config[1]`` is the first point."""
        return self.points[label - 1]

    def map(self, f) -> "Configuration":
        return Configuration([f(p) for p in self.points], self.d)


@dataclass(frozen=True)
class Framework:
    graph: Graph
    configuration: Configuration

    @property
    def d(self) -> int:
        return self.configuration.d

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    def point(self, label: int) -> Point:
        return self.configuration[label]


def make_framework(graph: Graph, configuration: Configuration) -> Framework:
    if configuration.d not in (2, 3):
        raise UnsupportedDimensionError(f"dimension {configuration.d} is not supported")
    if configuration.n != graph.n:
        raise DimensionMismatchError(
            f"graph has {graph.n} vertices but the configuration has {configuration.n} points"
        )
    return Framework(graph, configuration)


def complete_framework(points: Iterable[Sequence]) -> Framework:
    conf = Configuration(points)
    return make_framework(Graph.complete(conf.n), conf)


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous point ``(X : Y : Z)``; ``Z == 0`` lies on the line at infinity.

    Stored with the last nonzero coordinate scaled to 1, so equality of
    instances is equality of projective points.
    """

    X: Fraction
    Y: Fraction
    Z: Fraction

    def __init__(self, X, Y, Z):
        coords = _canonical_triple(X, Y, Z)
        object.__setattr__(self, "X", coords[0])
        object.__setattr__(self, "Y", coords[1])
        object.__setattr__(self, "Z", coords[2])

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.X, self.Y, self.Z)

    @property
    def at_infinity(self) -> bool:
        return self.Z == 0

    def affine(self) -> tuple[Fraction, Fraction]:
        if self.Z == 0:
            raise DegenerateError(f"{self} is at infinity")
        return (self.X / self.Z, self.Y / self.Z)

    def __str__(self) -> str:
        return f"({self.X}:{self.Y}:{self.Z})"


def _canonical_triple(a, b, c) -> tuple[Fraction, Fraction, Fraction]:
    v = [as_rational(a), as_rational(b), as_rational(c)]
    for k in (2, 1, 0):
        if v[k] != 0:
            s = v[k]
            return (v[0] / s, v[1] / s, v[2] / s)
    raise ValueError("homogeneous coordinates cannot all be zero")


def to_projective(p: Sequence) -> ProjectivePoint:
    x, y = p
    return ProjectivePoint(x, y, 1)


@dataclass(frozen=True)
class Load:
    vectors: tuple[Point, ...]

    def __init__(self, vectors: Iterable[Sequence]):
        object.__setattr__(
            self, "vectors", tuple(tuple(as_rational(c) for c in v) for v in vectors)
        )


# small exact vector helpers shared by the geometry modules

def sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def scale(t, p: Sequence[Fraction]) -> Point:
    return tuple(t * a for a in p)


def dot(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def cross(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def orient(a: Sequence[Fraction], b: Sequence[Fraction], c: Sequence[Fraction]) -> Fraction:
    """Twice the signed area of triangle abc (positive when counter-clockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])


def sign(x) -> int:
    return (x > 0) - (x < 0)
