"""Cell complexes with samples, adjacency and signatures; a small union-find."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable

from ..signature import FiberSignature


@dataclass
class Cell:
    id: str
    dim: int
    sample: Any
    signature: FiberSignature | None = None
    tag: str = ""
    stratum: bool = True
    members: tuple = ()
    adjacent: set[str] = field(default_factory=set)


@dataclass
class CellComplex:
    cells: dict[str, Cell] = field(default_factory=dict)

    def add(self, cell: Cell) -> Cell:
        if cell.id in self.cells:
            raise ValueError(f"duplicate cell id {cell.id}")
        self.cells[cell.id] = cell
        return cell

    def link(self, a: str, b: str) -> None:
        self.cells[a].adjacent.add(b)
        self.cells[b].adjacent.add(a)

    def of_dim(self, d: int, strata_only: bool = True) -> list[Cell]:
        return sorted(
            (c for c in self.cells.values() if c.dim == d and (c.stratum or not strata_only)),
            key=lambda c: c.id,
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells.values() if c.stratum)

    def adjacency_is_symmetric(self) -> bool:
        return all(a in self.cells[b].adjacent for a, c in self.cells.items() for b in c.adjacent)


class UnionFind:
    def __init__(self):
        self.parent: dict[Hashable, Hashable] = {}

    def add(self, x: Hashable) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: Hashable, b: Hashable) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller representative so results do not depend on merge order
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict[Hashable, list[Hashable]]:
        out: dict[Hashable, list[Hashable]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out
