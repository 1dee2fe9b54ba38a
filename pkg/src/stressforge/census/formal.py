"""Affine normal forms of labeled 4-point configurations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..core import Configuration, StressForgeError, as_rational, orient, sign, sub

CHARTS = (
    "PlusChart",
    "MinusChart",
    "DegeneratePlus",
    "DegenerateMinus",
    "PlusInfinity",
    "MinusInfinity",
)


class NotNormalizableError(StressForgeError):
    pass


class DeeperDegeneracyError(StressForgeError):
    pass


@dataclass(frozen=True)
class FormalConfiguration:
    chart: str
    params: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}")
        want = {"PlusChart": 2, "MinusChart": 2, "DegeneratePlus": 1, "DegenerateMinus": 1}.get(self.chart, 0)
        if len(self.params) != want:
            raise ValueError(f"{self.chart} takes {want} parameters")
        object.__setattr__(self, "params", tuple(as_rational(p) for p in self.params))

    def vertices(self) -> tuple[tuple[Fraction, Fraction], ...]:
        z, one = Fraction(0), Fraction(1)
        if self.chart == "PlusChart":
            x, y = self.params
            return ((z, z), (one, z), (x, y), (x, y + 1))
        if self.chart == "MinusChart":
            x, y = self.params
            return ((z, z), (one, z), (x, y), (x, y - 1))
        if self.chart == "DegeneratePlus":
            (d,) = self.params
            return ((z, z), (one, z), (z, one), (d, one))
        if self.chart == "DegenerateMinus":
            (d,) = self.params
            return ((z, z), (one, z), (z, -one), (d, -one))
        raise NotNormalizableError(f"{self.chart} is a limit and has no finite vertices")

    def configuration(self) -> Configuration:
        return Configuration(self.vertices(), 2)

    def sphere_direction(self) -> tuple[Fraction, Fraction, Fraction]:
        """An (unnormalized) vector pointing at this configuration on the sphere.

        The plus chart is the upper hemisphere, the minus chart the lower one
        with x reflected; degenerate charts lie on the equator.
        """
        if self.chart == "PlusChart":
            x, y = self.params
            return (x, y, Fraction(1))
        if self.chart == "MinusChart":
            x, y = self.params
            return (-x, y, Fraction(-1))
        if self.chart == "DegeneratePlus":
            return (-self.params[0], Fraction(1), Fraction(0))
        if self.chart == "DegenerateMinus":
            return (self.params[0], Fraction(-1), Fraction(0))
        if self.chart == "PlusInfinity":
            return (Fraction(1), Fraction(0), Fraction(0))
        return (Fraction(-1), Fraction(0), Fraction(0))

    def __str__(self) -> str:
        if not self.params:
            return self.chart
        return f"{self.chart}({', '.join(str(p) for p in self.params)})"


def _solve2(u, w, a, b):
    """The 2x2 matrix L with L u = a and L w = b."""
    det = u[0] * w[1] - u[1] * w[0]
    # L = [a b] [u w]^-1
    inv = ((w[1] / det, -w[0] / det), (-u[1] / det, u[0] / det))
    return tuple(
        tuple(a[r] * inv[0][c] + b[r] * inv[1][c] for c in range(2)) for r in range(2)
    )


def _apply(L, v):
    return (L[0][0] * v[0] + L[0][1] * v[1], L[1][0] * v[0] + L[1][1] * v[1])


def normalize_with_map(P: Configuration | Sequence) -> tuple[FormalConfiguration, tuple, tuple]:
    """Normal form plus the linear part L and translation t of T(x) = L x + t."""
    pts = P.points if isinstance(P, Configuration) else Configuration(P, 2).points
    if len(pts) != 4 or len(pts[0]) != 2:
        raise NotNormalizableError("normal forms are defined for four planar points")
    v1, v2, v3, v4 = pts
    u, w = sub(v2, v1), sub(v4, v3)
    if not any(u):
        raise NotNormalizableError("v1 and v2 coincide")
    one, z = Fraction(1), Fraction(0)
    cr = u[0] * w[1] - u[1] * w[0]
    if cr != 0:
        s = sign(cr)
        L = _solve2(u, w, (one, z), (z, Fraction(s)))
        t = tuple(-x for x in _apply(L, v1))
        x, y = (a + b for a, b in zip(_apply(L, v3), t))
        chart = "PlusChart" if s > 0 else "MinusChart"
        return FormalConfiguration(chart, (x, y)), L, t
    if not any(w):
        raise NotNormalizableError("v3 and v4 coincide")
    r = sub(v3, v1)
    side = sign(u[0] * r[1] - u[1] * r[0])
    if side == 0:
        raise NotNormalizableError("all four points are collinear")
    L = _solve2(u, r, (one, z), (z, Fraction(side)))
    t = tuple(-x for x in _apply(L, v1))
    lam = w[0] / u[0] if u[0] != 0 else w[1] / u[1]
    chart = "DegeneratePlus" if side > 0 else "DegenerateMinus"
    return FormalConfiguration(chart, (lam,)), L, t


def normalize_formal(P: Configuration | Sequence) -> FormalConfiguration:
    return normalize_with_map(P)[0]


TRIPLES = ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


def chirotope4(pts: Sequence) -> tuple[int, ...]:
    """Orientation signs of the four triples, in lexicographic order."""
    return tuple(sign(orient(pts[a - 1], pts[b - 1], pts[c - 1])) for a, b, c in TRIPLES)


def codimension4(pts: Sequence) -> int:
    """Codimension of the stratum containing four labeled planar points (0, 1 or >= 2)."""
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                return 2
    zeros = sum(1 for s in chirotope4(pts) if s == 0)
    return min(zeros, 2)
