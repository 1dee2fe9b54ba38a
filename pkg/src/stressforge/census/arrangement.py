"""Faces of an affine line arrangement in the plane, with exact samples.

Lines are ``a*x + b*y + c = 0``.  Faces of every dimension are keyed by
their sign vector against the (distinct) lines, which identifies a face
uniquely.  Sample points are exact and strictly inside their face.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..core import sign

Line = tuple[Fraction, Fraction, Fraction]
PlanePoint = tuple[Fraction, Fraction]


def line_value(line: Line, p: PlanePoint) -> Fraction:
    return line[0] * p[0] + line[1] * p[1] + line[2]


def line_through_points(p: PlanePoint, q: PlanePoint) -> Line:
    """Oriented so that ``line_value`` equals orient(p, q, x)."""
    a = p[1] - q[1]
    b = q[0] - p[0]
    c = p[0] * q[1] - p[1] * q[0]
    return (a, b, c)


def same_line(l1: Line, l2: Line) -> bool:
    return (
        l1[0] * l2[1] - l1[1] * l2[0] == 0
        and l1[0] * l2[2] - l1[2] * l2[0] == 0
        and l1[1] * l2[2] - l1[2] * l2[1] == 0
    )


@dataclass
class Face:
    dim: int
    signs: tuple[int, ...]
    sample: PlanePoint
    lines: tuple[int, ...] = ()  # indices of lines containing the face (for dim < 2)


@dataclass
class Arrangement:
    lines: list[Line]
    vertices: list[Face] = field(default_factory=list)
    edges: list[Face] = field(default_factory=list)
    regions: list[Face] = field(default_factory=list)
    # edge index -> (region on the negative side, region on the positive side)
    edge_sides: dict[int, tuple[int, int]] = field(default_factory=dict)

    def signs_at(self, p: PlanePoint) -> tuple[int, ...]:
        return tuple(sign(line_value(l, p)) for l in self.lines)

    def region_index(self, signs: tuple[int, ...]) -> int:
        for k, f in enumerate(self.regions):
            if f.signs == signs:
                return k
        raise KeyError(signs)

    def far_signs(self, direction: PlanePoint) -> tuple[int, ...]:
        """Sign vector of the unbounded region reached along ``direction``.

        ``direction`` must not be parallel to any line.
        """
        out = []
        for a, b, _ in self.lines:
            s = sign(a * direction[0] + b * direction[1])
            if s == 0:
                raise ValueError("direction is parallel to a line")
            out.append(s)
        return tuple(out)


def _param_point(base: PlanePoint, d: PlanePoint, t: Fraction) -> PlanePoint:
    return (base[0] + t * d[0], base[1] + t * d[1])


def _line_frame(line: Line) -> tuple[PlanePoint, PlanePoint]:
    a, b, c = line
    if b != 0:
        base = (Fraction(0), -c / b)
    else:
        base = (-c / a, Fraction(0))
    return base, (-b, a)


def _offset(p: PlanePoint, line: Line, lines: Sequence[Line]) -> Fraction:
    """A positive step along the normal of ``line`` that keeps every other sign at p."""
    n = (line[0], line[1])
    t = Fraction(1)
    for other in lines:
        v = line_value(other, p)
        if v == 0:
            continue
        rate = other[0] * n[0] + other[1] * n[1]
        if rate != 0:
            t = min(t, abs(v / rate) / 2)
    return t


def build_arrangement(lines: Sequence[Line]) -> Arrangement:
    """All faces of the arrangement of distinct ``lines``.

    Duplicate lines must be removed by the caller (see :func:`distinct_lines`).
    """
    lines = [tuple(Fraction(x) for x in l) for l in lines]
    arr = Arrangement(list(lines))
    if not lines:
        arr.regions.append(Face(2, (), (Fraction(0), Fraction(0))))
        return arr
    vertex_keys: dict[tuple[int, ...], int] = {}
    region_keys: dict[tuple[int, ...], int] = {}
    for i, line in enumerate(lines):
        base, d = _line_frame(line)
        ts = set()
        for j, other in enumerate(lines):
            if j == i:
                continue
            rate = other[0] * d[0] + other[1] * d[1]
            if rate == 0:
                continue
            ts.add(-line_value(other, base) / rate)
        ts = sorted(ts)
        for t in ts:
            p = _param_point(base, d, t)
            key = arr.signs_at(p)
            if key not in vertex_keys:
                vertex_keys[key] = len(arr.vertices)
                arr.vertices.append(
                    Face(0, key, p, tuple(k for k, l in enumerate(lines) if line_value(l, p) == 0))
                )
        if ts:
            params = [ts[0] - 1] + [(a + b) / 2 for a, b in zip(ts, ts[1:])] + [ts[-1] + 1]
        else:
            params = [Fraction(0)]
        for t in params:
            p = _param_point(base, d, t)
            key = arr.signs_at(p)
            e_index = len(arr.edges)
            arr.edges.append(Face(1, key, p, (i,)))
            sides = []
            for s in (-1, 1):
                step = s * _offset(p, line, lines)
                q = (p[0] + step * line[0], p[1] + step * line[1])
                rkey = arr.signs_at(q)
                if rkey not in region_keys:
                    region_keys[rkey] = len(arr.regions)
                    arr.regions.append(Face(2, rkey, q))
                sides.append(region_keys[rkey])
            arr.edge_sides[e_index] = (sides[0], sides[1])
    return arr


def distinct_lines(lines: Sequence[Line]) -> tuple[list[Line], list[int]]:
    """Deduplicate geometric lines; returns the distinct lines and, per input, its index."""
    out: list[Line] = []
    where = []
    for l in lines:
        for k, m in enumerate(out):
            if same_line(l, m):
                where.append(k)
                break
        else:
            where.append(len(out))
            out.append(l)
    return out, where


def direction_key(d: PlanePoint):
    """Sort key for directions by angle in [0, 2*pi), exact."""
    x, y = d
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    # within a half plane, compare by cotangent (monotone decreasing in angle)
    if y == 0:
        return (half, Fraction(0), 0)
    return (half, 1, -x / y)


def sorted_directions(dirs: Sequence[PlanePoint]) -> list[PlanePoint]:
    """Distinct directions (up to positive scaling) sorted by angle."""
    uniq: list[PlanePoint] = []
    for d in dirs:
        if not any(d[0] * e[1] - d[1] * e[0] == 0 and d[0] * e[0] + d[1] * e[1] > 0 for e in uniq):
            uniq.append(d)
    return sorted(uniq, key=direction_key)


def between(d1: PlanePoint, d2: PlanePoint) -> PlanePoint:
    """A direction strictly inside the counter-clockwise sector from d1 to d2."""
    cr = d1[0] * d2[1] - d1[1] * d2[0]
    if cr > 0:
        # normalize lengths roughly with L1 norms so the bisector stays inside
        n1 = abs(d1[0]) + abs(d1[1])
        n2 = abs(d2[0]) + abs(d2[1])
        return (d1[0] / n1 + d2[0] / n2, d1[1] / n1 + d2[1] / n2)
    # sector of at least pi: rotate d1 by +90 degrees
    if cr == 0 and d1[0] * d2[0] + d1[1] * d2[1] < 0:
        return (-d1[1], d1[0])
    # reflex sector: the direction opposite to the bisector of the other side
    n1 = abs(d1[0]) + abs(d1[1])
    n2 = abs(d2[0]) + abs(d2[1])
    return (-(d1[0] / n1 + d2[0] / n2), -(d1[1] / n1 + d2[1] / n2))
