"""Strata tables for K_n, n <= 5, by enumeration of labeled degeneracy types.

A configuration of n labeled points is described by its coincidence
partition and by the order type of the distinct points: the orientation
signs of all triples when the points span the plane, the order along the
line (up to reversal) when they are collinear.  For n <= 5 each such type
is one stratum.  Types are produced constructively, every one with an exact
realization: a type on c points arises by adding one point in some face of
the arrangement of lines through pairs of a (c-1)-point realization.  For
four generic points the arrangement depends on parallelisms as well as on
the order type, so every cell of the refined Λ4 sphere is used as a prefix.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..core import StressForgeError, orient, sign, sub
from .arrangement import build_arrangement, distinct_lines, line_through_points
from .sphere import build_sphere

SUPPORTED_N = (2, 3, 4, 5)


class UnsupportedNError(StressForgeError):
    pass


@dataclass(frozen=True)
class PointType:
    """Order type of c distinct labeled points."""

    c: int
    rank: int  # affine rank + 1 of the span: 1 point, 2 line, 3 plane
    key: tuple
    lines: tuple[tuple[int, ...], ...]  # maximal collinear subsets with >= 3 points (rank 3)
    realization: tuple

    @property
    def dimension(self) -> int:
        if self.c == 1:
            return 2
        if self.rank == 2:
            return self.c + 2
        return 2 * self.c - sum(len(l) - 2 for l in self.lines)


def _pt(x, y):
    return (Fraction(x), Fraction(y))


def _collinear_lines(points) -> tuple[tuple[int, ...], ...]:
    c = len(points)
    found = set()
    for i, j in combinations(range(c), 2):
        on = tuple(k for k in range(c) if orient(points[i], points[j], points[k]) == 0)
        if len(on) >= 3:
            found.add(on)
    return tuple(sorted(found))


def _line_order(points) -> tuple[int, ...]:
    """Order of collinear points along their line, canonical up to reversal."""
    d = sub(points[1], points[0])
    t = [d[0] * p[0] + d[1] * p[1] for p in points]
    order = tuple(sorted(range(len(points)), key=lambda k: t[k]))
    return min(order, order[::-1])


def point_type(points: Sequence) -> PointType:
    pts = tuple(tuple(Fraction(x) for x in p) for p in points)
    c = len(pts)
    if len(set(pts)) != c:
        raise ValueError("points must be distinct")
    if c == 1:
        return PointType(1, 1, ("point",), (), pts)
    chi = tuple(sign(orient(pts[a], pts[b], pts[q])) for a, b, q in combinations(range(c), 3))
    if not any(chi):
        return PointType(c, 2, ("line", _line_order(pts)), (), pts)
    return PointType(c, 3, ("chi", chi), _collinear_lines(pts), pts)


def _extensions(prefix: tuple) -> list[tuple]:
    """One new point in every face of the pair-line arrangement, off the old points."""
    c = len(prefix)
    if c == 1:
        return [(prefix[0][0] + 1, prefix[0][1])]
    if all(orient(prefix[0], prefix[1], p) == 0 for p in prefix):
        d = sub(prefix[1], prefix[0])
        t = sorted(d[0] * (p[0] - prefix[0][0]) + d[1] * (p[1] - prefix[0][1]) for p in prefix)
        norm = d[0] * d[0] + d[1] * d[1]
        params = [t[0] - 1] + [(a + b) / 2 for a, b in zip(t, t[1:])] + [t[-1] + 1]
        on_line = [(prefix[0][0] + s * d[0] / norm, prefix[0][1] + s * d[1] / norm) for s in params]
        off = [(prefix[0][0] - d[1], prefix[0][1] + d[0]), (prefix[0][0] + d[1], prefix[0][1] - d[0])]
        return on_line + off
    lines, _ = distinct_lines([line_through_points(prefix[i], prefix[j]) for i, j in combinations(range(c), 2)])
    arr = build_arrangement(lines)
    faces = arr.regions + arr.edges + arr.vertices
    return [f.sample for f in faces if f.sample not in prefix]


def _prefixes_for(types_c: dict, c: int) -> list[tuple]:
    """Prefix realizations covering every face type that occurs for c points."""
    prefixes = [t.realization for t in types_c.values()]
    if c == 4:
        sphere = build_sphere(refined=True)
        prefixes += [r.sample.vertices() for r in sphere.regions]
        prefixes += [w.sample.vertices() for w in sphere.walls]
    return prefixes


def point_types(c: int) -> dict[tuple, PointType]:
    """All order types of c distinct labeled planar points, c <= 5."""
    if not 1 <= c <= 5:
        raise UnsupportedNError(f"order types are enumerated for at most 5 points, got {c}")
    types = {("point",): point_type([_pt(0, 0)])}
    for k in range(2, c + 1):
        new: dict[tuple, PointType] = {}
        for prefix in _prefixes_for(types, k - 1):
            for q in _extensions(prefix):
                t = point_type(tuple(prefix) + (q,))
                new.setdefault(t.key, t)
        types = new
    return types


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Partitions of 1..n, blocks ordered by their smallest element."""
    out: list[list[list[int]]] = [[]]
    for x in range(1, n + 1):
        nxt = []
        for p in out:
            for k in range(len(p)):
                nxt.append([b + [x] if i == k else b for i, b in enumerate(p)])
            nxt.append(p + [[x]])
        out = nxt
    return [tuple(tuple(b) for b in p) for p in out]


def descriptor_category(blocks: Sequence[Sequence[int]], t: PointType) -> str:
    """Short label of a stratum type, e.g. ``2111/general`` or ``11111/line4``.

    The first part lists block sizes; the second part is ``point``,
    ``collinear`` (all distinct points on a line), ``general``, or the sizes
    of the lines counted with multiplicity, joined by ``+``.
    """
    mult = "".join(str(len(b)) for b in sorted(blocks, key=len, reverse=True))
    if t.rank == 1:
        return f"{mult}/point"
    if t.rank == 2:
        return f"{mult}/collinear"
    if not t.lines:
        return f"{mult}/general"
    sizes = sorted((sum(len(blocks[k]) for k in line) for line in t.lines), reverse=True)
    return f"{mult}/line" + "+".join(str(s) for s in sizes)


@dataclass
class StrataTable:
    n: int
    counts: dict[int, int]
    breakdown: dict[int, dict[str, int]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if any(v < 0 for v in self.counts.values()) or any(d > 2 * self.n for d in self.counts):
            raise ValueError("invalid strata table")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "counts": {str(d): self.counts[d] for d in sorted(self.counts)},
            "breakdown": {
                str(d): dict(sorted(self.breakdown[d].items())) for d in sorted(self.breakdown)
            },
            "notes": list(self.notes),
        }


def descriptor_table(n: int) -> StrataTable:
    if n not in SUPPORTED_N:
        raise UnsupportedNError(f"strata tables are available for n in {SUPPORTED_N}, got {n}")
    per_c = {c: point_types(c) for c in range(1, n + 1)}
    breakdown: dict[int, Counter] = {}
    for blocks in set_partitions(n):
        for t in per_c[len(blocks)].values():
            breakdown.setdefault(t.dimension, Counter())[descriptor_category(blocks, t)] += 1
    counts = {d: sum(c.values()) for d, c in breakdown.items()}
    return StrataTable(n, counts, {d: dict(c) for d, c in breakdown.items()})


def strata_table(n: int, census=None) -> StrataTable:
    """Number of strata per dimension for K_n in the plane.

    For n = 5 the two top rows come from the fibered census (pass a
    precomputed one as ``census`` to avoid recomputing); they are checked
    against the descriptor enumeration.
    """
    table = descriptor_table(n)
    if n == 5:
        if census is None:
            from .lambda5 import lambda5_census

            census = lambda5_census()
        for d, got in ((10, census.top_count), (9, census.codim1_count)):
            if table.counts.get(d) != got:
                table.notes.append(f"dimension {d}: census {got} differs from descriptor count {table.counts.get(d)}")
            table.counts[d] = got
    return table
