"""Codimension 0 and 1 strata of five labeled points in the plane.

The space is fibered over the sphere of the first four points.  The base
sphere is refined by the two parallelism loci, so over each base cell the
arrangement of the six lines through pairs of base points has a fixed
combinatorial type.  A product cell is a base cell together with a face of
that fiber arrangement, identified by the signs of the fifth point against
the six oriented lines (these signs are invariant under proper affine maps,
so they match across the chart gluing).

Strata are the classes of product cells under merging across non-genuine
walls: parallelism edges in the charts and equator arcs.  A merge happens
when the wall sample has the same fiber signature as both neighbours.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from ..core import complete_framework, orient, sign
from ..signature import FiberSignature, fiber_signature, format_sign_vector
from ..witness import worker_count
from .arrangement import build_arrangement, distinct_lines, line_through_points
from .complex import Cell, CellComplex, UnionFind
from .formal import FormalConfiguration
from .sphere import build_sphere

PAIRS = tuple(combinations(range(4), 2))
TRIPLES5 = tuple(combinations(range(5), 3))


@dataclass(frozen=True)
class FiberFace:
    signs: tuple[int, ...]  # against the six oriented lines v_i v_j
    dim: int
    points: tuple  # the five points
    signature: FiberSignature


def chirotope5(points) -> tuple[int, ...]:
    return tuple(sign(orient(points[a], points[b], points[c])) for a, b, c in TRIPLES5)


def fiber_faces(base: tuple) -> list[FiberFace]:
    """Regions and edges of the fiber arrangement over four base points."""
    oriented = [line_through_points(base[i], base[j]) for i, j in PAIRS]
    lines, _ = distinct_lines(oriented)
    arr = build_arrangement(lines)
    out = []
    for faces in (arr.regions, arr.edges):
        for f in faces:
            q = f.sample
            s = tuple(sign(a * q[0] + b * q[1] + c) for a, b, c in oriented)
            pts = tuple(base) + (q,)
            out.append(FiberFace(s, f.dim, pts, fiber_signature(complete_framework(pts))))
    return out


def _fiber_job(fc: FormalConfiguration) -> list[FiberFace]:
    return fiber_faces(fc.vertices())


@dataclass
class Lambda5Census:
    top_count: int
    codim1_count: int
    complex: CellComplex
    fiber_region_counts: dict[tuple, int]  # per refined base region
    merges: list[tuple]  # (wall key, kind, sign vector) for each applied merge


def lambda5_census(workers: int | None = None) -> Lambda5Census:
    sphere = build_sphere(refined=True)
    jobs = [("region", r.key, r.sample) for r in sphere.regions]
    jobs += [("wall", w.key, w.sample) for w in sphere.walls]
    workers = workers if workers is not None else worker_count()
    samples = [j[2] for j in jobs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_fiber_job, samples, chunksize=1))
    else:
        results = [_fiber_job(s) for s in samples]
    fibers: dict[tuple, dict[tuple, FiberFace]] = {}
    for (_, key, _), faces in zip(jobs, results):
        fibers[key] = {f.signs: f for f in faces}

    uf = UnionFind()
    kind_of: dict[tuple, str] = {}
    for r in sphere.regions:
        for f in fibers[r.key].values():
            node = (r.key, f.signs)
            uf.add(node)
            kind_of[node] = "top" if f.dim == 2 else "codim1"
    for w in sphere.walls:
        if not w.genuine:
            continue
        for f in fibers[w.key].values():
            if f.dim == 2:
                node = (w.key, f.signs)
                uf.add(node)
                kind_of[node] = "codim1"

    merges = []
    for w in sphere.walls:
        if w.genuine:
            continue
        a, b = w.sides
        for f in fibers[w.key].values():
            fa, fb = fibers[a].get(f.signs), fibers[b].get(f.signs)
            if fa is None or fb is None:
                raise AssertionError(f"fiber face {f.signs} over {w.key} has no continuation")
            if f.signature == fa.signature == fb.signature:
                uf.union((a, f.signs), (b, f.signs))
                merges.append((w.key, f.dim, f.signs))

    classes = uf.classes()
    cx = CellComplex()
    node_cell: dict[tuple, str] = {}
    used: dict[str, int] = {}
    for root in sorted(classes, key=repr):
        members = sorted(classes[root], key=repr)
        kind = kind_of[root]
        rep = members[0]
        face = fibers[rep[0]][rep[1]]
        base_id = f"{kind}:{format_sign_vector(chirotope5(face.points))}"
        used[base_id] = used.get(base_id, 0) + 1
        cid = base_id if used[base_id] == 1 else f"{base_id}#{used[base_id]}"
        cx.add(Cell(cid, 2 if kind == "top" else 1, face.points, face.signature, tag=kind,
                    members=tuple(members)))
        for node in members:
            node_cell[node] = cid
    # adjacency: codimension-1 cells bound top cells
    for r in sphere.regions:
        fib = fibers[r.key]
        for f in fib.values():
            if f.dim != 1:
                continue
            k = f.signs.index(0)
            for s in (1, -1):
                nb = f.signs[:k] + (s,) + f.signs[k + 1:]
                if nb in fib:
                    cx.link(node_cell[(r.key, f.signs)], node_cell[(r.key, nb)])
    for w in sphere.walls:
        if not w.genuine:
            continue
        for f in fibers[w.key].values():
            if f.dim != 2:
                continue
            for side in w.sides:
                cx.link(node_cell[(w.key, f.signs)], node_cell[(side, f.signs)])

    region_counts = {
        r.key: sum(1 for f in fibers[r.key].values() if f.dim == 2) for r in sphere.regions
    }
    top = sum(1 for c in cx.cells.values() if c.tag == "top")
    codim1 = sum(1 for c in cx.cells.values() if c.tag == "codim1")
    return Lambda5Census(top, codim1, cx, region_counts, merges)
