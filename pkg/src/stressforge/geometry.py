"""Projective predicates, universal sets and the codimension-one condition catalog.

Points and lines live in the projective plane with exact homogeneous
coordinates, so parallel lines simply meet at a point with Z = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .core import (
    Configuration,
    DegenerateError,
    ProjectivePoint,
    StressForgeError,
    _canonical_triple,
    cross,
    dot,
    to_projective,
)


@dataclass(frozen=True)
class ProjectiveLine:
    """Line ``aX + bY + cZ = 0``, canonicalized like :class:`ProjectivePoint`."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c):
        coords = _canonical_triple(a, b, c)
        object.__setattr__(self, "a", coords[0])
        object.__setattr__(self, "b", coords[1])
        object.__setattr__(self, "c", coords[2])

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def contains(self, p: ProjectivePoint) -> bool:
        return dot(self.coords, p.coords) == 0

    def __str__(self) -> str:
        return f"[{self.a}:{self.b}:{self.c}]"


def _proj(p) -> ProjectivePoint:
    return p if isinstance(p, ProjectivePoint) else to_projective(p)


def det3(r1, r2, r3) -> Fraction:
    return dot(r1, cross(r2, r3))


def collinear(p, q, r) -> bool:
    p, q, r = _proj(p), _proj(q), _proj(r)
    return det3(p.coords, q.coords, r.coords) == 0


def line_through(p, q) -> ProjectiveLine:
    p, q = _proj(p), _proj(q)
    if p == q:
        raise DegenerateError(f"no unique line through the coincident points {p}")
    return ProjectiveLine(*cross(p.coords, q.coords))


def intersection(l1: ProjectiveLine, l2: ProjectiveLine) -> ProjectivePoint:
    if l1 == l2:
        raise DegenerateError(f"lines {l1} coincide")
    return ProjectivePoint(*cross(l1.coords, l2.coords))


def meet(p, q, r, s) -> ProjectivePoint:
    """Intersection of line pq with line rs."""
    return intersection(line_through(p, q), line_through(r, s))


def concurrent(l1: ProjectiveLine, l2: ProjectiveLine, l3: ProjectiveLine) -> bool:
    if len({l1, l2, l3}) < 3:
        raise DegenerateError("concurrency needs three distinct lines")
    return det3(l1.coords, l2.coords, l3.coords) == 0


def conic_determinant(points: Sequence) -> Fraction:
    """Determinant of the 6x6 matrix of degree-two monomials (homogeneous)."""
    pts = [_proj(p).coords for p in points]
    if len(pts) != 6:
        raise StressForgeError("the conic test needs exactly six points")
    rows = [[X * X, X * Y, Y * Y, X * Z, Y * Z, Z * Z] for X, Y, Z in pts]
    return _det(rows)


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    total = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            total = -total
        total *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return total


def on_conic(points: Sequence) -> bool:
    return conic_determinant(points) == 0


def apply_projective(H: Sequence[Sequence], p) -> ProjectivePoint:
    c = _proj(p).coords
    return ProjectivePoint(*(sum((Fraction(h) * x for h, x in zip(row, c)), Fraction(0)) for row in H))


# --- universal sets ----------------------------------------------------------

@dataclass(frozen=True)
class UniversalPoint:
    point: ProjectivePoint
    level: int
    origin: tuple  # ("input", label) or ("meet", (i, j), (k, l)) indexing the previous level


@dataclass
class UniversalSet:
    level: int
    points: list[UniversalPoint] = field(default_factory=list)

    def coordinates(self) -> set[ProjectivePoint]:
        return {u.point for u in self.points}

    def __len__(self) -> int:
        return len(self.points)


UNIVERSAL_SET_CAP = 2


class CapExceededError(StressForgeError):
    pass


def universal_step(points: Sequence[ProjectivePoint]) -> list[tuple[ProjectivePoint, tuple]]:
    """Pairwise intersections of all lines through two of ``points``."""
    lines: dict[ProjectiveLine, tuple[int, int]] = {}
    for i, j in combinations(range(len(points)), 2):
        if points[i] != points[j]:
            lines.setdefault(line_through(points[i], points[j]), (i, j))
    out = []
    for (l1, e1), (l2, e2) in combinations(lines.items(), 2):
        out.append((intersection(l1, l2), (e1, e2)))
    return out


def universal_set(conf: Configuration | Sequence, m: int, cap: int = UNIVERSAL_SET_CAP) -> UniversalSet:
    if m > cap:
        raise CapExceededError(f"level {m} exceeds the cap {cap}")
    pts = conf.points if isinstance(conf, Configuration) else conf
    current = []
    seen = set()
    for label, p in enumerate(pts, start=1):
        pp = _proj(p)
        if pp not in seen:
            seen.add(pp)
            current.append(UniversalPoint(pp, 0, ("input", label)))
    for level in range(1, m + 1):
        coords = [u.point for u in current]
        nxt = list(current)
        for pt, (e1, e2) in universal_step(coords):
            if pt not in seen:
                seen.add(pt)
                nxt.append(UniversalPoint(pt, level, ("meet", e1, e2)))
        current = nxt
    return UniversalSet(m, current)


# --- condition catalog -------------------------------------------------------

CONDITION_ARITY = {
    "Collinear3": 3,
    "Concurrent3Lines": 6,
    "Conic6": 6,
    "K7-ConstructedConcurrency": 7,
    "K7-ConstructedConic": 7,
}

CONDITION_TEXT = {
    "Collinear3": "v1, v2, v3 are collinear",
    "Concurrent3Lines": "lines v1v2, v3v4, v5v6 meet in one point (or are all parallel)",
    "Conic6": "v1..v6 lie on a conic",
    "K7-ConstructedConcurrency": "lines v1v2, v3v4, v5p meet, p = v2v6 x v3v7",
    "K7-ConstructedConic": "v1, v2, v3, v4, v5, p lie on a conic, p = v1v6 x v3v7",
}


@dataclass(frozen=True)
class ConditionId:
    """A catalog tag with its roles ``v1, v2, ...`` bound to vertex labels."""

    tag: str
    bindings: tuple[int, ...] = ()

    def __post_init__(self):
        if self.tag not in CONDITION_ARITY:
            raise StressForgeError(f"unknown condition {self.tag!r}; known: {sorted(CONDITION_ARITY)}")
        arity = CONDITION_ARITY[self.tag]
        if not self.bindings:
            object.__setattr__(self, "bindings", tuple(range(1, arity + 1)))
        if len(self.bindings) != arity:
            raise StressForgeError(f"{self.tag} binds {arity} roles, got {len(self.bindings)}")
        if len(set(self.bindings)) != arity:
            raise StressForgeError(f"role bindings {self.bindings} are not injective")

    @classmethod
    def from_roles(cls, tag: str, roles: dict[str, int]) -> "ConditionId":
        arity = CONDITION_ARITY.get(tag)
        if arity is None:
            raise StressForgeError(f"unknown condition {tag!r}")
        return cls(tag, tuple(int(roles.get(f"v{i}", i)) for i in range(1, arity + 1)))

    def describe(self) -> str:
        text = CONDITION_TEXT[self.tag]
        for i in reversed(range(len(self.bindings))):
            text = text.replace(f"v{i + 1}", f"w{self.bindings[i]}")
        return text.replace("w", "v")


def evaluate_condition(cid: ConditionId, points: Sequence) -> tuple[bool, dict[str, ProjectivePoint]]:
    """Evaluate a condition on projective (or affine) points given by label order.

    Returns the verdict and any constructed points.
    """
    pts = [_proj(p) for p in points]
    n = len(pts)
    if any(not 1 <= b <= n for b in cid.bindings):
        raise StressForgeError(f"bindings {cid.bindings} reference labels outside 1..{n}")
    v = {i + 1: pts[b - 1] for i, b in enumerate(cid.bindings)}
    built: dict[str, ProjectivePoint] = {}
    tag = cid.tag
    if tag == "Collinear3":
        return collinear(v[1], v[2], v[3]), built
    if tag == "Concurrent3Lines":
        return _lines_concurrent((v[1], v[2]), (v[3], v[4]), (v[5], v[6])), built
    if tag == "Conic6":
        return on_conic([v[i] for i in range(1, 7)]), built
    if tag == "K7-ConstructedConcurrency":
        p = meet(v[2], v[6], v[3], v[7])
        built["p"] = p
        return _lines_concurrent((v[1], v[2]), (v[3], v[4]), (v[5], p)), built
    if tag == "K7-ConstructedConic":
        p = meet(v[1], v[6], v[3], v[7])
        built["p"] = p
        return on_conic([v[1], v[2], v[3], v[4], v[5], p]), built
    raise AssertionError(tag)


def _lines_concurrent(*pairs) -> bool:
    lines = [line_through(a, b) for a, b in pairs]
    return det3(*(l.coords for l in lines)) == 0


def check_condition(cid: ConditionId, conf: Configuration) -> bool:
    if conf.d != 2:
        raise StressForgeError("conditions are planar")
    return evaluate_condition(cid, conf.points)[0]


# --- Pascal relation ---------------------------------------------------------

def pascal_permutations() -> list[tuple[int, ...]]:
    """The 60 hexagon orderings of 0..5 modulo rotation and reflection."""
    out = []
    for rest in permutations(range(1, 6)):
        sigma = (0,) + rest
        if sigma[1] < sigma[5]:
            out.append(sigma)
    return out


@dataclass(frozen=True)
class PascalWitness:
    order: tuple[int, ...]  # 1-based hexagon order
    points: tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint] | None
    degenerate: str | None = None

    @property
    def collinear(self) -> bool | None:
        if self.points is None:
            return None
        return collinear(*self.points)


def pascal_witnesses(points: Sequence) -> list[PascalWitness]:
    """Opposite-side intersections for all 60 hexagon orderings.

    An instance is flagged (``degenerate`` set, ``points`` None) when a side
    is undefined, two opposite sides coincide, or two of the three
    intersection points coincide.
    """
    pts = [_proj(p) for p in points]
    if len(pts) != 6:
        raise StressForgeError("Pascal witnesses need six points")
    out = []
    for sigma in pascal_permutations():
        s = [pts[i] for i in sigma]
        order = tuple(i + 1 for i in sigma)
        try:
            p = meet(s[0], s[1], s[3], s[4])
            q = meet(s[1], s[2], s[4], s[5])
            r = meet(s[2], s[3], s[5], s[0])
        except DegenerateError as exc:
            out.append(PascalWitness(order, None, str(exc)))
            continue
        if len({p, q, r}) < 3:
            out.append(PascalWitness(order, None, "intersection points coincide"))
            continue
        out.append(PascalWitness(order, (p, q, r)))
    return out


# --- exact sample generation -------------------------------------------------

def random_rational(rng: random.Random, bound: int = 12, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def random_point(rng: random.Random, bound: int = 12) -> tuple[Fraction, Fraction]:
    return (random_rational(rng, bound), random_rational(rng, bound))


def _along(a, b, t) -> tuple[Fraction, Fraction]:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _nonzero_param(rng: random.Random) -> Fraction:
    while True:
        t = random_rational(rng, 3, 5)
        if t not in (0, 1):
            return t


def circle_point(t: Fraction) -> tuple[Fraction, Fraction]:
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def random_affine(rng: random.Random):
    while True:
        a, b, c, d = (random_rational(rng, 4, 3) for _ in range(4))
        if a * d - b * c != 0:
            break
    tx, ty = random_rational(rng), random_rational(rng)
    return lambda p: (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)


def in_general_position(points: Sequence) -> bool:
    """Distinct points, no three collinear."""
    pts = [_proj(p) for p in points]
    if len(set(pts)) < len(pts):
        return False
    return not any(collinear(a, b, c) for a, b, c in combinations(pts, 3))


def sample_on_condition(tag: str, n: int, rng: random.Random, bindings: Sequence[int] | None = None) -> Configuration:
    """A configuration satisfying the condition exactly, generic otherwise.

    Extra vertices beyond the condition's roles are random.  The sample is
    rejected and redrawn until no three of the role points are collinear
    (except where the condition demands it) and constructed points are finite.
    """
    cid = ConditionId(tag, tuple(bindings) if bindings else ())
    if n < max(cid.bindings):
        raise StressForgeError(f"{tag} needs at least {max(cid.bindings)} vertices")
    for _ in range(1000):
        roles = _draw_roles(tag, rng)
        if roles is None:
            continue
        pts: list = [None] * n
        for i, b in enumerate(cid.bindings):
            pts[b - 1] = roles[i]
        for k in range(n):
            if pts[k] is None:
                pts[k] = random_point(rng)
        if tag != "Collinear3" and not in_general_position(pts):
            continue
        if tag == "Collinear3" and not _only_forced_collinearity(pts, cid.bindings):
            continue
        conf = Configuration(pts)
        if check_condition(cid, conf):
            return conf
    raise DegenerateError(f"could not sample {tag}")


def _only_forced_collinearity(pts, bindings) -> bool:
    forced = frozenset(b - 1 for b in bindings)
    if len(set(map(tuple, pts))) < len(pts):
        return False
    for tri in combinations(range(len(pts)), 3):
        if frozenset(tri) != forced and collinear(*(pts[i] for i in tri)):
            return False
    return True


def _draw_roles(tag: str, rng: random.Random):
    if tag == "Collinear3":
        a, b = random_point(rng), random_point(rng)
        if a == b:
            return None
        return [a, b, _along(a, b, _nonzero_param(rng))]
    if tag == "Concurrent3Lines":
        v = [random_point(rng) for _ in range(5)]
        o = meet(v[0], v[1], v[2], v[3])
        if o.at_infinity:
            return None
        o = o.affine()
        return v + [_along(o, v[4], _nonzero_param(rng))]
    if tag == "Conic6":
        f = random_affine(rng)
        ts = set()
        while len(ts) < 6:
            ts.add(random_rational(rng, 5, 4))
        return [f(circle_point(t)) for t in sorted(ts)]
    if tag == "K7-ConstructedConcurrency":
        v = {i: random_point(rng) for i in (1, 2, 3, 4, 6, 7)}
        o = meet(v[1], v[2], v[3], v[4])
        p = meet(v[2], v[6], v[3], v[7])
        if o.at_infinity or p.at_infinity or o == p:
            return None
        v[5] = _along(o.affine(), p.affine(), _nonzero_param(rng))
        return [v[i] for i in range(1, 8)]
    if tag == "K7-ConstructedConic":
        f = random_affine(rng)
        ts = set()
        while len(ts) < 6:
            ts.add(random_rational(rng, 5, 4))
        c = [f(circle_point(t)) for t in sorted(ts)]
        v1, v2, v3, v4, v5, p = c
        v6 = _along(v1, p, _nonzero_param(rng))
        v7 = _along(v3, p, _nonzero_param(rng))
        return [v1, v2, v3, v4, v5, v6, v7]
    raise AssertionError(tag)


def sample_generic(n: int, rng: random.Random) -> Configuration:
    """Random points avoiding every catalog condition of the smallest kinds."""
    while True:
        pts = [random_point(rng) for _ in range(n)]
        if not in_general_position(pts):
            continue
        if n >= 6 and any(on_conic([pts[i] for i in s]) for s in combinations(range(n), 6)):
            continue
        return Configuration(pts)


def sample_off_condition(tag: str, n: int, rng: random.Random) -> Configuration:
    """A generic configuration on which the condition (with default roles) fails."""
    cid = ConditionId(tag)
    while True:
        conf = sample_generic(n, rng)
        try:
            if not check_condition(cid, conf):
                return conf
        except DegenerateError:
            continue

