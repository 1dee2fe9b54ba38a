"""The sphere of formal 4-point configurations as two glued affine charts.

Each chart (x, y) carries an arrangement of lines.  Genuine lines are the
collinearity loci of the four triples; the refined version adds the two
parallelism loci, which are not strata but change the fiber arrangement
over them.  The equator holds the degenerate charts and is cut at the
asymptotic directions of all chart lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..core import StressForgeError, sub
from .arrangement import Arrangement, Line, between, build_arrangement, sorted_directions
from .formal import TRIPLES, FormalConfiguration, chirotope4

ChartKey = str  # "PlusChart" or "MinusChart"


def _triple_function(chart: ChartKey, k: int) -> Callable:
    def f(x, y):
        return chirotope_value(FormalConfiguration(chart, (x, y)).vertices(), TRIPLES[k])

    return f


def chirotope_value(pts, triple) -> Fraction:
    a, b, c = (pts[i - 1] for i in triple)
    u, v = sub(b, a), sub(c, a)
    return u[0] * v[1] - u[1] * v[0]


def _parallel_function(chart: ChartKey, pair) -> Callable:
    (a, b), (c, d) = pair

    def f(x, y):
        pts = FormalConfiguration(chart, (x, y)).vertices()
        u, v = sub(pts[b - 1], pts[a - 1]), sub(pts[d - 1], pts[c - 1])
        return u[0] * v[1] - u[1] * v[0]

    return f


def affine_line_of(f: Callable) -> Line:
    """Coefficients of an affine function of (x, y), checked on a test point."""
    z = Fraction(0)
    c = f(z, z)
    a = f(Fraction(1), z) - c
    b = f(z, Fraction(1)) - c
    probe = (Fraction(3, 7), Fraction(-5, 2))
    if f(*probe) != a * probe[0] + b * probe[1] + c:
        raise StressForgeError("chart locus is not a line")
    return (a, b, c)


PARALLEL_PAIRS = {"13|24": ((1, 3), (2, 4)), "14|23": ((1, 4), (2, 3))}


def triple_tag(triple) -> str:
    return "".join(str(i) for i in triple)


@dataclass
class ChartLine:
    line: Line
    tag: str
    genuine: bool


def chart_lines(chart: ChartKey, refined: bool) -> list[ChartLine]:
    out = [
        ChartLine(affine_line_of(_triple_function(chart, k)), triple_tag(t), True)
        for k, t in enumerate(TRIPLES)
    ]
    if refined:
        for tag, pair in PARALLEL_PAIRS.items():
            out.append(ChartLine(affine_line_of(_parallel_function(chart, pair)), tag, False))
    return out


@dataclass
class Region:
    key: tuple  # (chart, region index)
    sample: FormalConfiguration


@dataclass
class Wall:
    """A 1-cell of a chart, or an arc of the equator."""

    key: tuple
    sample: FormalConfiguration
    tag: str
    genuine: bool
    sides: tuple[tuple, tuple]  # region keys on both sides


@dataclass
class Vertex:
    key: tuple
    sample: FormalConfiguration | None
    walls: list[tuple]


@dataclass
class SphereArrangement:
    charts: dict[ChartKey, Arrangement]
    lines: dict[ChartKey, list[ChartLine]]
    regions: list[Region]
    walls: list[Wall]
    vertices: list[Vertex]


def _to_minus_direction(d):
    return (-d[0], d[1])


def _equator_config(d) -> FormalConfiguration:
    delta = -d[0] / d[1]
    return FormalConfiguration("DegeneratePlus" if d[1] > 0 else "DegenerateMinus", (delta,))


def build_sphere(refined: bool = False) -> SphereArrangement:
    charts, lines = {}, {}
    regions: list[Region] = []
    walls: list[Wall] = []
    vertices: list[Vertex] = []
    for chart in ("PlusChart", "MinusChart"):
        cl = chart_lines(chart, refined)
        arr = build_arrangement([c.line for c in cl])
        charts[chart], lines[chart] = arr, cl
        for k, face in enumerate(arr.regions):
            regions.append(Region((chart, k), FormalConfiguration(chart, face.sample)))
        for k, face in enumerate(arr.edges):
            line = cl[face.lines[0]]
            lo, hi = arr.edge_sides[k]
            walls.append(
                Wall((chart, "e", k), FormalConfiguration(chart, face.sample), line.tag, line.genuine,
                     ((chart, lo), (chart, hi)))
            )
    for chart in ("PlusChart", "MinusChart"):
        arr = charts[chart]
        for k, face in enumerate(arr.vertices):
            incident = [w.key for w in walls if w.key[0] == chart and _edge_touches(arr, w.key[2], face)]
            vertices.append(Vertex((chart, "v", k), FormalConfiguration(chart, face.sample), incident))
    # equator
    dirs = []
    for chart in ("PlusChart", "MinusChart"):
        for c in lines[chart]:
            a, b, _ = c.line
            d = (-b, a)
            if chart == "MinusChart":
                d = _to_minus_direction(d)
            dirs += [d, (-d[0], -d[1])]
    crit = sorted_directions(dirs)
    arcs = []
    for k, d in enumerate(crit):
        nxt = crit[(k + 1) % len(crit)]
        mid = between(d, nxt)
        plus = charts["PlusChart"].region_index(charts["PlusChart"].far_signs(mid))
        minus = charts["MinusChart"].region_index(charts["MinusChart"].far_signs(_to_minus_direction(mid)))
        arcs.append(Wall(("equator", "e", k), _equator_config(mid), "equator", False,
                         (("PlusChart", plus), ("MinusChart", minus))))
    walls += arcs
    for k, d in enumerate(crit):
        incident = [arcs[k - 1].key, arcs[k].key]
        # chart rays ending at this direction
        for chart in ("PlusChart", "MinusChart"):
            arr = charts[chart]
            dd = d if chart == "PlusChart" else _to_minus_direction(d)
            for w in walls:
                if w.key[0] == chart and _ray_towards(arr, w.key[2], dd):
                    incident.append(w.key)
        sample = _equator_config(d) if d[1] != 0 else FormalConfiguration(
            "PlusInfinity" if d[0] > 0 else "MinusInfinity"
        )
        vertices.append(Vertex(("equator", "v", k), sample, incident))
    return SphereArrangement(charts, lines, regions, walls, vertices)


def _edge_touches(arr: Arrangement, edge_index: int, vertex) -> bool:
    """True when the vertex lies in the closure of the edge."""
    e = arr.edges[edge_index]
    if vertex.signs[e.lines[0]] != 0:
        return False
    return all(vs == 0 or vs == es for vs, es in zip(vertex.signs, e.signs))


def _ray_towards(arr: Arrangement, edge_index: int, direction) -> bool:
    """True when the edge is an unbounded ray of its line heading in ``direction``."""
    e = arr.edges[edge_index]
    a, b, _ = arr.lines[e.lines[0]]
    if a * direction[0] + b * direction[1] != 0:
        return False
    for k, line in enumerate(arr.lines):
        rate = line[0] * direction[0] + line[1] * direction[1]
        if k == e.lines[0] or rate == 0:
            continue
        v = line[0] * e.sample[0] + line[1] * e.sample[1] + line[2]
        if -v / rate > 0:
            return False
    return True


def sample_chirotope(fc: FormalConfiguration) -> tuple[int, ...]:
    return chirotope4(fc.vertices())
