"""Graph surgeries that keep or predictably change stress dimensions.

Every operation returns a verdict holding both dimensions, computed
exactly; nothing is assumed from the theory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    Configuration,
    DegenerateError,
    Edge,
    Framework,
    Graph,
    StressForgeError,
    cross,
    dot,
    edge,
    make_framework,
    orient,
    sub,
)
from .geometry import intersection, line_through
from .linalg import rank, solve, RationalMatrix
from .stress import plane_atom_3d, self_stress_space, stress_dimension


class PreconditionError(StressForgeError):
    pass


class ZeroEdgeStressError(StressForgeError):
    pass


class BindingError(StressForgeError):
    pass


@dataclass(frozen=True)
class SurgerySite:
    """Role names bound to vertex labels."""

    roles: Mapping[str, int]

    def __post_init__(self):
        labels = list(self.roles.values())
        if len(set(labels)) != len(labels):
            raise BindingError(f"role bindings are not injective: {dict(self.roles)}")
        object.__setattr__(self, "roles", dict(self.roles))

    def __getitem__(self, name: str) -> int:
        try:
            return self.roles[name]
        except KeyError:
            raise BindingError(f"role {name!r} is not bound") from None

    def check(self, f: Framework, names: Sequence[str]) -> None:
        for name in names:
            v = self[name]
            if not 1 <= v <= f.n:
                raise BindingError(f"role {name!r} is bound to {v}, which is not a vertex")


@dataclass
class SurgeryVerdict:
    preconditions_ok: bool
    detail: dict[str, bool] = field(default_factory=dict)
    dim_before: int | None = None
    dim_after: int | None = None

    @property
    def dims_equal(self) -> bool:
        return self.dim_before is not None and self.dim_before == self.dim_after

    def as_dict(self) -> dict:
        return {
            "preconditions_ok": self.preconditions_ok,
            "detail": dict(sorted(self.detail.items())),
            "dim_before": self.dim_before,
            "dim_after": self.dim_after,
            "dims_equal": self.dims_equal,
        }


# --- edge exchange ---------------------------------------------------------

def edge_exchange_check(
    G: Graph, H: Graph, e1: Sequence[int], e2: Sequence[int], P: Configuration
) -> SurgeryVerdict:
    """Compare dim W(G - e1, P) with dim W(G - e2, P)."""
    e1, e2 = edge(*e1), edge(*e2)
    detail = {
        "H is a subgraph of G": H.n == G.n and all(e in G for e in H.edges),
        "e1 in H": e1 in H,
        "e2 in H": e2 in H,
    }
    if all(detail.values()):
        space = self_stress_space(make_framework(H, P))
        detail["dim W(H,P) = 1"] = space.dimension == 1
        if space.dimension == 1:
            w = space.basis[0]
            detail["stress nonzero on e1"] = w[e1] != 0
            detail["stress nonzero on e2"] = w[e2] != 0
    ok = all(detail.values()) and len(detail) == 6
    before = stress_dimension(make_framework(G.without(e1), P)) if e1 in G else None
    after = stress_dimension(make_framework(G.without(e2), P)) if e2 in G else None
    return SurgeryVerdict(ok, detail, before, after)


# --- 2-sum -------------------------------------------------------------------

def _similarity(p2, q2, p1, q1):
    """z -> a z + b on complex numbers, taking p2 to p1 and q2 to q1."""
    dx, dy = q2[0] - p2[0], q2[1] - p2[1]
    tx, ty = q1[0] - p1[0], q1[1] - p1[1]
    den = dx * dx + dy * dy
    if den == 0:
        raise DegenerateError("the identified edge has coincident endpoints")
    ar, ai = (tx * dx + ty * dy) / den, (ty * dx - tx * dy) / den

    def f(z):
        x, y = z[0] - p2[0], z[1] - p2[1]
        return (p1[0] + ar * x - ai * y, p1[1] + ai * x + ar * y)

    return f


def _edge_carries_stress(f: Framework, e: Edge) -> bool:
    return any(w[e] != 0 for w in self_stress_space(f).basis)


def two_sum(
    F1: Framework, edge1: Sequence[int], F2: Framework, edge2: Sequence[int]
) -> tuple[Framework, SurgeryVerdict]:
    """Glue F2 onto F1 along the given edges and drop the glued edge.

    F2 is moved by the orientation-preserving similarity taking p2 to p1 and
    q2 to q1.  F1 keeps its labels; the other vertices of F2 follow in order.
    """
    if F1.d != 2 or F2.d != 2:
        raise StressForgeError("the 2-sum is implemented for planar frameworks")
    (p1, q1), (p2, q2) = tuple(edge1), tuple(edge2)
    e1, e2 = edge(p1, q1), edge(p2, q2)
    if e1 not in F1.graph or e2 not in F2.graph:
        raise StressForgeError("the glued edges must belong to their frameworks")
    for f, e, name in ((F1, e1, "first"), (F2, e2, "second")):
        if not _edge_carries_stress(f, e):
            raise ZeroEdgeStressError(f"every stress of the {name} framework vanishes on {e}")
    move = _similarity(F2.point(p2), F2.point(q2), F1.point(p1), F1.point(q1))
    relabel = {p2: p1, q2: q1}
    nxt = F1.n
    for v in range(1, F2.n + 1):
        if v not in relabel:
            nxt += 1
            relabel[v] = nxt
    points = list(F1.configuration.points) + [None] * (nxt - F1.n)
    for v in range(1, F2.n + 1):
        if v not in (p2, q2):
            points[relabel[v] - 1] = move(F2.point(v))
    edges = set(F1.edges) | {edge(relabel[i], relabel[j]) for i, j in F2.edges}
    edges.discard(e1)
    result = make_framework(Graph(nxt, sorted(edges)), Configuration(points, 2))
    d1, d2 = stress_dimension(F1), stress_dimension(F2)
    verdict = SurgeryVerdict(
        True,
        {"stress nonzero on first edge": True, "stress nonzero on second edge": True},
        d1 + d2 - 1,
        stress_dimension(result),
    )
    return result, verdict


# --- Surgery I ---------------------------------------------------------------

SURGERY1_ROLES = ("p", "q", "v2", "v3", "v4")
SURGERY1_TRIPLES = (("p", "v2", "v3"), ("q", "v2", "v3"), ("p", "v2", "v4"), ("q", "v3", "v4"), ("v2", "v3", "v4"))


def surgery1_pattern_edges(site: SurgerySite) -> list[Edge]:
    """Edges at the two contracted vertices: p-v2, p-v4, p-q, q-v3, q-v4."""
    p, q, v2, v3, v4 = (site[r] for r in SURGERY1_ROLES)
    return [edge(p, v2), edge(p, v4), edge(p, q), edge(q, v3), edge(q, v4)]


def triple_detail(f: Framework, site: SurgerySite, triples) -> dict[str, bool]:
    return {
        f"({a},{b},{c}) not collinear": orient(f.point(site[a]), f.point(site[b]), f.point(site[c])) != 0
        for a, b, c in triples
    }


def surgery1_apply(f: Framework, site: SurgerySite) -> tuple[Framework, SurgeryVerdict]:
    """Contract p and q into the point P = line(v2, p) ∩ line(v3, q).

    The two contracted vertices must have exactly the pattern edges.  The
    new vertex takes the last label, is joined to v2, v3 and v4, and the
    remaining vertices keep their relative order.
    """
    if f.d != 2:
        raise StressForgeError("Surgery I is planar")
    site.check(f, SURGERY1_ROLES)
    p, q, v2, v3, v4 = (site[r] for r in SURGERY1_ROLES)
    pattern = set(surgery1_pattern_edges(site))
    missing = [e for e in pattern if e not in f.graph]
    extra = [e for e in f.edges if (p in e or q in e) and e not in pattern]
    if missing or extra:
        raise PreconditionError(
            f"vertices {p} and {q} do not match the pattern (missing {sorted(missing)}, extra {sorted(extra)})"
        )
    detail = triple_detail(f, site, SURGERY1_TRIPLES)
    if not all(detail.values()):
        bad = [k for k, v in detail.items() if not v]
        raise PreconditionError(f"collinear triples: {', '.join(bad)}")
    P = intersection(line_through(f.point(v2), f.point(p)), line_through(f.point(v3), f.point(q)))
    if P.at_infinity:
        raise DegenerateError("the construction lines are parallel")
    keep = [v for v in range(1, f.n + 1) if v not in (p, q)]
    new_label = {v: k + 1 for k, v in enumerate(keep)}
    new = len(keep) + 1
    points = [f.point(v) for v in keep] + [P.affine()]
    edges = [edge(new_label[i], new_label[j]) for i, j in f.edges if i in new_label and j in new_label]
    edges += [edge(new_label[v], new) for v in (v2, v3, v4)]
    result = make_framework(Graph(new, edges), Configuration(points, 2))
    verdict = SurgeryVerdict(True, detail, stress_dimension(f), stress_dimension(result))
    return result, verdict


# --- Surgery II --------------------------------------------------------------

SURGERY2_ROLES = ("p", "q", "r", "s", "v1", "v4")
SURGERY2_TRIPLES = (
    ("p", "q", "v1"),
    ("p", "v1", "v4"),
    ("r", "v1", "v4"),
    ("q", "v1", "v4"),
    ("s", "v1", "v4"),
    ("r", "s", "v4"),
)


def surgery2_verify(f1: Framework, f2: Framework, site: SurgerySite) -> SurgeryVerdict:
    """Check the triple conditions on ``f1`` and compare both stress dimensions."""
    if f1.d != 2 or f2.d != 2:
        raise StressForgeError("Surgery II is planar")
    site.check(f1, SURGERY2_ROLES)
    detail = triple_detail(f1, site, SURGERY2_TRIPLES)
    return SurgeryVerdict(all(detail.values()), detail, stress_dimension(f1), stress_dimension(f2))


# --- the surgery in space ----------------------------------------------------

SURGERY3D_ROLES = ("v2", "v3", "v4")


@dataclass(frozen=True)
class Plane:
    normal: tuple[Fraction, Fraction, Fraction]
    offset: Fraction  # normal . x = offset

    def contains(self, x) -> bool:
        return dot(self.normal, x) == self.offset

    def same_as(self, other: "Plane") -> bool:
        if any(cross(self.normal, other.normal)):
            return False
        k = next(i for i in range(3) if other.normal[i] != 0)
        t = self.normal[k] / other.normal[k]
        return self.offset == t * other.offset


def plane_through(points: Sequence) -> Plane:
    """The plane containing all given points; they must span exactly a plane."""
    pts = list(dict.fromkeys(tuple(Fraction(x) for x in p) for p in points))
    normal = None
    for i in range(1, len(pts)):
        for j in range(i + 1, len(pts)):
            c = cross(sub(pts[i], pts[0]), sub(pts[j], pts[0]))
            if any(c):
                normal = c
                break
        if normal is not None:
            break
    if normal is None:
        raise DegenerateError("the points do not span a plane")
    plane = Plane(normal, dot(normal, pts[0]))
    if not all(plane.contains(p) for p in pts):
        raise DegenerateError("the points are not coplanar")
    return plane


def meet_planes(planes: Sequence[Plane]):
    A = RationalMatrix([list(p.normal) for p in planes], 3)
    if rank(A) != 3:
        raise DegenerateError("the planes do not meet in a single point")
    return solve(A, [p.offset for p in planes])


def _external_planes(f: Framework, site: SurgerySite, pairs) -> list[Plane]:
    if len(pairs) != 3:
        raise StressForgeError("three edge pairs (e1,e2), (e3,e4), (e5,e6) are needed")
    planes = []
    for role, (ea, eb) in zip(SURGERY3D_ROLES, pairs):
        ea, eb = edge(*ea), edge(*eb)
        for e in (ea, eb):
            if e not in f.graph:
                raise BindingError(f"{e} is not an edge")
            if site[role] not in e:
                raise BindingError(f"{e} is not incident to {role}")
        planes.append(plane_through([f.point(v) for v in ea + eb]))
    return planes


def surgery3d_verify(
    f1: Framework, site: SurgerySite, pairs: Sequence[tuple[Sequence[int], Sequence[int]]]
) -> tuple[Framework, SurgeryVerdict]:
    """Replace the triangle v2 v3 v4 by a new vertex v1 joined to v2, v3, v4.

    ``pairs`` lists the external edge pairs at v2, v3 and v4.  The new point
    v1 is the meet of the three planes those pairs span; it takes label n+1.
    """
    if f1.d != 3:
        raise StressForgeError("this surgery lives in space")
    site.check(f1, SURGERY3D_ROLES)
    v2, v3, v4 = (site[r] for r in SURGERY3D_ROLES)
    triangle = [edge(v2, v3), edge(v2, v4), edge(v3, v4)]
    if any(e not in f1.graph for e in triangle):
        raise BindingError("v2, v3, v4 must span a triangle of the graph")
    pi1 = plane_through([f1.point(v) for v in (v2, v3, v4)])
    planes = _external_planes(f1, site, pairs)
    for k, pl in enumerate(planes, start=2):
        if pl.same_as(pi1):
            raise DegenerateError(f"plane {k} coincides with the triangle plane")
    v1 = meet_planes(planes)
    detail = {"v1 lies in the triangle plane": pi1.contains(v1)}
    n = f1.n + 1
    edges = [e for e in f1.edges if e not in triangle] + [edge(v, n) for v in (v2, v3, v4)]
    f2 = make_framework(Graph(n, edges), Configuration(list(f1.configuration.points) + [v1], 3))
    verdict = SurgeryVerdict(True, detail, stress_dimension(f1), stress_dimension(f2))
    return f2, verdict


def triangle_cancellation(f1: Framework, site: SurgerySite, v1) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Per basis stress of f1: triangle stresses left after adding the plane atom.

    The atom on v1..v4 is scaled to cancel the stress on v2v3; the result
    lists what remains on v2v3, v2v4 and v3v4 (all zero when the surgery
    applies).
    """
    v2, v3, v4 = (site[r] for r in SURGERY3D_ROLES)
    atom = plane_atom_3d([v1, f1.point(v2), f1.point(v3), f1.point(v4)])
    a = atom.stress  # labels 1 = v1, 2 = v2, 3 = v3, 4 = v4
    out = []
    for w in self_stress_space(f1).basis:
        t = -w[(v2, v3)] / a[(2, 3)]
        out.append((
            w[(v2, v3)] + t * a[(2, 3)],
            w[(v2, v4)] + t * a[(2, 4)],
            w[(v3, v4)] + t * a[(3, 4)],
        ))
    return out
