"""The stratification of four labeled points in the plane (codimension <= 1).

Cells are named by the orientation signs of the triples 123, 124, 134, 234
at their sample, e.g. ``face:+-+-`` or ``arc:0+--``; for four labeled points
this sign vector identifies the stratum.
"""

from __future__ import annotations

from functools import lru_cache

from ..core import Configuration, complete_framework
from ..signature import FiberSignature, fiber_signature, format_sign_vector
from .complex import Cell, CellComplex, UnionFind
from .formal import (
    DeeperDegeneracyError,
    FormalConfiguration,
    chirotope4,
    codimension4,
    normalize_formal,
)
from .sphere import build_sphere, sample_chirotope

GROUP_OF_TAG = {
    "123": "light blue",
    "124": "dark blue",
    "134": "light green",
    "234": "dark green",
}


def k4_signature(fc: FormalConfiguration) -> FiberSignature:
    return fiber_signature(complete_framework(fc.vertices()))


def cell_id(chi: tuple[int, ...]) -> str:
    kind = "face" if 0 not in chi else "arc"
    return f"{kind}:{format_sign_vector(chi)}"


@lru_cache(maxsize=1)
def lambda4_arrangement() -> CellComplex:
    sphere = build_sphere(refined=False)
    sig = {r.key: k4_signature(r.sample) for r in sphere.regions}
    uf = UnionFind()
    for r in sphere.regions:
        uf.add(r.key)
    for w in sphere.walls:
        if w.tag != "equator":
            continue
        a, b = w.sides
        if k4_signature(w.sample) == sig[a] == sig[b]:
            uf.union(a, b)
    cx = CellComplex()
    sample_of = {r.key: r.sample for r in sphere.regions}
    region_cell: dict[tuple, str] = {}
    for root, members in sorted(uf.classes().items(), key=lambda kv: repr(kv[0])):
        members = sorted(members)
        rep = min(members, key=lambda k: (k[0] != "PlusChart", k))
        chis = {sample_chirotope(sample_of[k]) for k in members}
        if len(chis) != 1:
            raise AssertionError(f"merged face spans several order types: {chis}")
        cid = cell_id(chis.pop())
        cx.add(Cell(cid, 2, sample_of[rep], sig[rep], members=tuple(members)))
        for k in members:
            region_cell[k] = cid
    for w in sphere.walls:
        if w.tag == "equator":
            continue
        cid = cell_id(sample_chirotope(w.sample))
        cell = cx.add(Cell(cid, 1, w.sample, k4_signature(w.sample), tag=w.tag, members=(w.key,)))
        for side in w.sides:
            cx.link(cell.id, region_cell[side])
    wall_cell = {c.members[0]: c.id for c in cx.cells.values() if c.dim == 1}
    for v in sphere.vertices:
        vid = f"vertex:{v.key[0]}:{v.key[2]}"
        cx.add(Cell(vid, 0, v.sample, None, tag="", members=(v.key,)))
        for wk in v.walls:
            if wk in wall_cell:
                cx.link(vid, wall_cell[wk])
    return cx


def arc_groups(cx: CellComplex) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {g: [] for g in GROUP_OF_TAG.values()}
    for c in cx.of_dim(1):
        out[GROUP_OF_TAG[c.tag]].append(c.id)
    return out


def classify_k4(P: Configuration) -> str:
    """The id of the Λ4 cell containing the labeled configuration ``P``."""
    pts = P.points if isinstance(P, Configuration) else Configuration(P, 2).points
    if len(pts) != 4:
        raise DeeperDegeneracyError("classification needs exactly four points")
    if codimension4(pts) >= 2:
        raise DeeperDegeneracyError("configuration has codimension at least 2")
    fc = normalize_formal(pts)
    cid = cell_id(chirotope4(fc.vertices()))
    if cid not in lambda4_arrangement().cells:
        raise AssertionError(f"no cell {cid} in the complex")
    return cid


def collinear_tag(cid: str) -> str | None:
    """For an arc id, the triple that is collinear, e.g. ``v1v2v3 collinear``."""
    if not cid.startswith("arc:"):
        return None
    signs = cid[4:]
    triple = ("123", "124", "134", "234")[signs.index("0")]
    return "".join(f"v{c}" for c in triple) + " collinear"
