"""Ready-made frameworks for the surgeries, built with exact coordinates."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Configuration, Framework, Graph, cross, make_framework, sub

# the 7-vertex graph whose stress condition is: lines v1v2, v3v4, v5p meet,
# where p = v2v6 ∩ v3v7; Surgery I contracts v6, v7 into p
SURGERY1_EXAMPLE_EDGES = (
    (1, 2), (1, 4), (1, 5), (2, 3), (2, 6), (3, 4), (3, 7), (4, 5), (5, 6), (5, 7), (6, 7),
)
SURGERY1_EXAMPLE_ROLES = {"p": 6, "q": 7, "v2": 2, "v3": 3, "v4": 5}


def surgery1_example_graph() -> Graph:
    return Graph(7, SURGERY1_EXAMPLE_EDGES)


SURGERY3D_ROLES = {"v2": 1, "v3": 2, "v4": 3}
SURGERY3D_PAIRS = (((1, 4), (1, 5)), ((2, 6), (2, 7)), ((3, 8), (3, 9)))
_OCTAHEDRON_GAPS = {(4, 5), (6, 7), (8, 9)}


def _r(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-20, 20), rng.randint(1, 5))


def surgery3d_example(rng: random.Random, apex_height: int = 0) -> tuple[Framework, tuple]:
    """A triangle tied by six bars to a rigid octahedron.

    The triangle v2 v3 v4 (labels 1-3) lies in z = 0.  A hub point h is
    chosen over a random point of that plane at height ``apex_height``; the
    two bars at each triangle vertex lie in a plane through that vertex and
    h.  With height 0 the three planes meet in the triangle plane.
    Returns the framework and h.
    """
    tri = [(_r(rng), _r(rng), Fraction(0)) for _ in range(3)]
    hub = (_r(rng), _r(rng), Fraction(apex_height))
    ext = []
    for v in tri:
        u = sub(hub, v)
        w = cross((_r(rng), _r(rng), _r(rng)), u)
        while True:
            (s1, t1), (s2, t2) = (_r(rng), _r(rng)), (_r(rng), _r(rng))
            # the two bars must span the plane through v and the hub
            if any(w) and s1 * t2 != s2 * t1 and (s1, t1) != (0, 0) and (s2, t2) != (0, 0):
                break
            w = cross((_r(rng), _r(rng), _r(rng)), u)
        for s, t in ((s1, t1), (s2, t2)):
            ext.append(tuple(v[i] + s * u[i] + t * w[i] for i in range(3)))
    edges = [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
    edges += [(a, b) for a in range(4, 10) for b in range(a + 1, 10) if (a, b) not in _OCTAHEDRON_GAPS]
    return make_framework(Graph(9, edges), Configuration(tri + ext, 3)), hub
