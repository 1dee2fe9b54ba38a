"""Search for subgraphs of K_n that locally identify a condition.

A witness has no self stress on any off-condition sample and a
one-dimensional stress space on every on-condition sample.  The search is a
depth-first walk over edge subsets in lexicographic order.  Each sample
carries an incremental column basis of its equilibrium matrix modulo a
random 62-bit prime, so adding an edge costs one reduction per sample:

* an edge that is dependent on an off-sample is never added (the subset and
  all supersets have a stress there);
* an on-sample whose stress dimension would exceed 1 stops the branch.

Surviving subsets are confirmed with exact rational rank before they are
reported; the modular ranks only ever prune.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Configuration, Edge, Graph, StressForgeError, make_framework
from .geometry import ConditionId, check_condition
from .linalg import BadPrimeError, ModularBasis, random_prime, rank, reduce_mod
from .stress import equilibrium_matrix


class EmptySampleError(StressForgeError):
    pass


DEFAULT_SEED = 20100501


def worker_count(default: int = 1) -> int:
    raw = os.environ.get("STRESSFORGE_THREADS")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise StressForgeError(f"STRESSFORGE_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise StressForgeError(f"STRESSFORGE_THREADS must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class _Problem:
    n: int
    edges: tuple[Edge, ...]
    on_columns: tuple[tuple[tuple[int, ...], ...], ...]  # per sample, per edge: column mod p
    off_columns: tuple[tuple[tuple[int, ...], ...], ...]
    prime: int
    max_edges: int
    required: frozenset[int]


def _columns_mod(conf: Configuration, edges, p: int):
    g = Graph(conf.n, edges)
    A = equilibrium_matrix(make_framework(g, conf))
    return tuple(tuple(reduce_mod(x, p) for x in A.column(j)) for j in range(A.cols))


def _pick_prime(rng: random.Random, samples) -> int:
    while True:
        p = random_prime(rng)
        try:
            for conf in samples:
                for pt in conf.points:
                    for x in pt:
                        reduce_mod(Fraction(x), p)
        except BadPrimeError:
            continue
        return p


def _search_branch(problem: _Problem, first: int) -> list[tuple[int, ...]]:
    """All qualifying subsets whose smallest edge index is ``first``."""
    P = problem
    on0 = [ModularBasis(P.prime) for _ in P.on_columns]
    off0 = [ModularBasis(P.prime) for _ in P.off_columns]
    found: list[tuple[int, ...]] = []
    state = _extend(P, first, (), on0, [0] * len(on0), off0)
    if state is None:
        return found
    stack = [((first,), *state)]
    m = len(P.edges)
    while stack:
        chosen, on_b, on_dims, off_b = stack.pop()
        if all(d == 1 for d in on_dims) and P.required <= set(chosen):
            found.append(chosen)
        if len(chosen) >= P.max_edges:
            continue
        for nxt in range(m - 1, chosen[-1], -1):
            st = _extend(P, nxt, chosen, on_b, on_dims, off_b)
            if st is not None:
                stack.append((chosen + (nxt,), *st))
    return found


def _extend(P: _Problem, e: int, chosen, on_b, on_dims, off_b):
    new_off = []
    for basis, cols in zip(off_b, P.off_columns):
        b = basis.copy()
        if b.add(cols[e]):
            return None
        new_off.append(b)
    new_on, new_dims = [], []
    for basis, cols, d in zip(on_b, P.on_columns, on_dims):
        b = basis.copy()
        if b.add(cols[e]):
            d += 1
            if d > 1:
                return None
        new_on.append(b)
        new_dims.append(d)
    return new_on, new_dims, new_off


def _min_degree_ok(edges: Sequence[Edge]) -> bool:
    deg: dict[int, int] = {}
    for i, j in edges:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    return all(d >= 2 for d in deg.values())


def stress_dim_exact(conf: Configuration, edges: Sequence[Edge]) -> int:
    g = Graph(conf.n, edges)
    A = equilibrium_matrix(make_framework(g, conf))
    return A.cols - rank(A)


def witness_subgraph_search(
    n: int,
    target: ConditionId | str,
    on_samples: Sequence[Configuration],
    off_samples: Sequence[Configuration],
    *,
    seed_edges: Sequence[Edge] = (),
    max_edges: int | None = None,
    rng_seed: int = DEFAULT_SEED,
    workers: int | None = None,
) -> list[Graph]:
    """Subgraphs of K_n with stress dimension 1 on every on-sample and 0 on every off-sample.

    ``seed_edges`` restricts the search to supersets of those edges (useful
    for n = 7).  Results are sorted by edge count, then lexicographically.
    """
    if isinstance(target, str):
        target = ConditionId(target)
    if not on_samples or not off_samples:
        raise EmptySampleError("witness search needs at least one on-sample and one off-sample")
    for conf in on_samples:
        if conf.n != n or not check_condition(target, conf):
            raise EmptySampleError(f"an on-sample does not satisfy {target.tag}")
    for conf in off_samples:
        if conf.n != n or check_condition(target, conf):
            raise EmptySampleError(f"an off-sample satisfies {target.tag}")
    edges = Graph.complete(n).edges
    index = {e: k for k, e in enumerate(edges)}
    required = frozenset(index[tuple(sorted(e))] for e in seed_edges)
    rng = random.Random(rng_seed)
    samples = list(on_samples) + list(off_samples)
    p1 = _pick_prime(rng, samples)
    problem = _Problem(
        n,
        edges,
        tuple(_columns_mod(c, edges, p1) for c in on_samples),
        tuple(_columns_mod(c, edges, p1) for c in off_samples),
        p1,
        max_edges if max_edges is not None else 2 * n - 3,
        required,
    )
    starts = range(len(edges)) if not required else range(min(required) + 1)
    workers = workers if workers is not None else worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_branch, [problem] * len(starts), starts))
    else:
        chunks = [_search_branch(problem, s) for s in starts]
    candidates = sorted({c for chunk in chunks for c in chunk}, key=lambda c: (len(c), c))
    out = []
    for cand in candidates:
        es = [edges[k] for k in cand]
        if not _min_degree_ok(es):
            continue
        if any(stress_dim_exact(c, es) != 0 for c in off_samples):
            continue
        if any(stress_dim_exact(c, es) != 1 for c in on_samples):
            continue
        out.append(Graph(n, es))
    return out
