"""Model files, JSON reports and the SVG picture of the four-point sphere."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import Configuration, Framework, Graph, StressForgeError, as_rational, make_framework


class SchemaError(StressForgeError):
    pass


class FloatRejectedError(SchemaError):
    pass


@dataclass
class Model:
    framework: Framework
    roles: dict[str, int] = field(default_factory=dict)


_TOKEN = re.compile(r'"(?:\\.|[^"\\])*"|-?\d+(?:\.\d*)?(?:[eE][+-]?\d+)?')


def _first_float(text: str) -> tuple[int, str] | None:
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not tok.startswith('"') and any(ch in tok for ch in ".eE"):
            return text.count("\n", 0, m.start()) + 1, tok
    return None


def _reject_float(literal: str):
    raise FloatRejectedError(literal)


def loads_model(text: str, source: str = "<model>") -> Model:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except FloatRejectedError:
        line, tok = _first_float(text) or (0, "?")
        raise FloatRejectedError(
            f"{source}:{line}: floating-point literal {tok} is not exact; write it as a \"p/q\" string"
        ) from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{source}: the model must be a JSON object")
    unknown = set(doc) - {"dimension", "vertices", "edges", "roles"}
    if unknown:
        raise SchemaError(f"{source}: unknown keys {sorted(unknown)}")
    d = doc.get("dimension")
    if d not in (2, 3) or isinstance(d, bool):
        raise SchemaError(f"{source}: field 'dimension' must be 2 or 3")
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise SchemaError(f"{source}: field 'vertices' must be a non-empty list")
    points = []
    for i, v in enumerate(verts):
        if not isinstance(v, list) or len(v) != d:
            raise SchemaError(f"{source}: vertices[{i}] must have {d} coordinates")
        coords = []
        for k, x in enumerate(v):
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise SchemaError(f"{source}: vertices[{i}][{k}] must be an integer or a \"p/q\" string")
            try:
                coords.append(as_rational(x))
            except TypeError as exc:
                raise FloatRejectedError(f"{source}: vertices[{i}][{k}]: {exc}") from None
            except (ValueError, ZeroDivisionError):
                raise SchemaError(f"{source}: vertices[{i}][{k}]: cannot read {x!r} as a rational") from None
        points.append(coords)
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise SchemaError(f"{source}: field 'edges' must be a list")
    for k, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise SchemaError(f"{source}: edges[{k}] must be a pair of vertex labels")
        if not all(1 <= x <= len(points) for x in e) or e[0] == e[1]:
            raise SchemaError(f"{source}: edges[{k}] = {e} is not an edge between listed vertices")
    roles = doc.get("roles", {})
    if not isinstance(roles, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in roles.values()
    ):
        raise SchemaError(f"{source}: field 'roles' must map names to vertex labels")
    for name, v in roles.items():
        if not 1 <= v <= len(points):
            raise SchemaError(f"{source}: roles[{name!r}] = {v} is not a vertex")
    fw = make_framework(Graph(len(points), edges), Configuration(points, d))
    return Model(fw, dict(roles))


def parse_model(path) -> Model:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise StressForgeError(f"cannot read {path}: {exc.strerror}") from None
    return loads_model(text, str(path))


def rational_text(x: Fraction) -> str:
    return str(Fraction(x))


def dumps_model(model: Model | Framework) -> str:
    if isinstance(model, Framework):
        model = Model(model)
    f = model.framework
    doc = {
        "dimension": f.d,
        "vertices": [[rational_text(x) for x in p] for p in f.configuration.points],
        "edges": [list(e) for e in f.edges],
    }
    if model.roles:
        doc["roles"] = dict(sorted(model.roles.items()))
    return json.dumps(doc, indent=2) + "\n"


def dumps_report(report: dict) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def edge_text(e) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("-")
        return (int(a), int(b))
    except ValueError:
        raise StressForgeError(f"cannot read edge {text!r}; write it as i-j") from None


# --- SVG ---------------------------------------------------------------------

GROUP_COLORS = {
    "light blue": "#7fc8f8",
    "dark blue": "#1f3b8c",
    "light green": "#8fd694",
    "dark green": "#1e6b2f",
}

_SCALE = 120.0
_VIEW = 4.0  # half width of the picture in projected units


def _stereo(v) -> tuple[float, float] | None:
    x, y, z = (float(c) for c in v)
    r = math.sqrt(x * x + y * y + z * z)
    x, y, z = x / r, y / r, z / r
    if 1 + z < 1e-9:
        return None
    return (x / (1 + z), y / (1 + z))


def _chart_point(chart: str, x: float, y: float):
    return (x, y, 1.0) if chart == "PlusChart" else (-x, y, -1.0)


def _arc_polyline(sphere, wall_key) -> list[list[tuple[float, float]]]:
    from .census.arrangement import _line_frame, line_value

    chart, _, k = wall_key
    arr = sphere.charts[chart]
    e = arr.edges[k]
    line = arr.lines[e.lines[0]]
    base, d = _line_frame(line)
    norm = d[0] * d[0] + d[1] * d[1]
    t0 = ((e.sample[0] - base[0]) * d[0] + (e.sample[1] - base[1]) * d[1]) / norm
    ts = []
    for j, other in enumerate(arr.lines):
        rate = other[0] * d[0] + other[1] * d[1]
        if j != e.lines[0] and rate != 0:
            ts.append(-line_value(other, base) / rate)
    lo = max((t for t in ts if t < t0), default=None)
    hi = min((t for t in ts if t > t0), default=None)
    steps = 160
    params = []
    for s in range(1, steps):
        u = s / steps
        if lo is not None and hi is not None:
            params.append(float(lo) + u * float(hi - lo))
        elif lo is not None:
            params.append(float(lo) + math.tan(u * math.pi / 2))
        elif hi is not None:
            params.append(float(hi) - math.tan(u * math.pi / 2))
        else:
            params.append(float(t0) + math.tan((u - 0.5) * math.pi))
    if lo is not None:
        params.insert(0, float(lo))
        if hi is not None:
            params.append(float(hi))
    elif hi is not None:
        params.insert(0, float(hi))
    pieces, cur = [], []
    for t in params:
        x = float(base[0]) + t * float(d[0])
        y = float(base[1]) + t * float(d[1])
        p = _stereo(_chart_point(chart, x, y))
        if p is None or max(abs(p[0]), abs(p[1])) > 50:
            if len(cur) > 1:
                pieces.append(cur)
            cur = []
            continue
        cur.append(p)
    if len(cur) > 1:
        pieces.append(cur)
    return pieces


def svg_text(cx) -> str:
    """The Λ4 complex in stereographic projection from the south pole."""
    from .census.lambda4 import GROUP_OF_TAG
    from .census.sphere import build_sphere

    arcs = cx.of_dim(1)
    faces = cx.of_dim(2)
    if not arcs or not faces:
        raise StressForgeError("the complex is empty; nothing to draw")
    sphere = build_sphere(refined=False)
    groups: dict[str, int] = {g: 0 for g in GROUP_COLORS}
    size = 2 * _VIEW * _SCALE

    def xy(p):
        return f"{(p[0] + _VIEW) * _SCALE:.3f},{(_VIEW - p[1]) * _SCALE:.3f}"

    body = []
    for cell in arcs:
        group = GROUP_OF_TAG[cell.tag]
        groups[group] += 1
        for piece in _arc_polyline(sphere, cell.members[0]):
            pts = " ".join(xy(p) for p in piece)
            body.append(
                f'<polyline class="arc" data-cell="{cell.id}" data-group="{group}" '
                f'fill="none" stroke="{GROUP_COLORS[group]}" stroke-width="3" points="{pts}"/>'
            )
    r = _SCALE
    c = _VIEW * _SCALE
    body.append(
        f'<circle class="equator" cx="{c:.3f}" cy="{c:.3f}" r="{r:.3f}" fill="none" '
        'stroke="black" stroke-width="1.5" stroke-dasharray="8,6"/>'
    )
    for cell in faces:
        p = _stereo(cell.sample.sphere_direction())
        if p is None:
            continue
        x, y = xy(p).split(",")
        body.append(
            f'<text class="face" x="{x}" y="{y}" font-size="11" text-anchor="middle">{cell.id[5:]}</text>'
        )
    meta = json.dumps({"arcs": len(arcs), "faces": len(faces), "arc_groups": groups}, sort_keys=True)
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">\n'
        f"<metadata>{meta}</metadata>\n"
    )
    return head + "\n".join(body) + "\n</svg>\n"


def export_svg(cx, out) -> dict:
    text = svg_text(cx)
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise StressForgeError(f"cannot write {out}: {exc.strerror}") from None
    return json.loads(re.search(r"<metadata>(.*)</metadata>", text).group(1))
