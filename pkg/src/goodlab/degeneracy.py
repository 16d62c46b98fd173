"""Degeneracy orderings and the elementary facts about q-degenerate graphs."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from goodlab.errors import PreconditionError
from goodlab.graph import Graph


@dataclass(frozen=True)
class DegeneracyOrder:
    order: tuple[int, ...]
    back_degrees: tuple[int, ...]
    degeneracy: int

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def back_neighbors(self, g: Graph) -> list[list[int]]:
        """For each position i, the neighbours of order[i] placed before it."""
        pos = self.position
        return [sorted(w for w in g.adj[v] if pos[w] < i) for i, v in enumerate(self.order)]


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    """Peel a minimum-degree vertex (lowest index on ties) until empty, then reverse."""
    deg = g.degrees()
    removed = [False] * g.n
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    peeled = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        peeled.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    order = tuple(reversed(peeled))
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(sum(1 for w in g.adj[v] if pos[w] < i) for i, v in enumerate(order))
    return DegeneracyOrder(order, back, max(back, default=0))


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g).degeneracy


def is_q_degenerate(g: Graph, q: int) -> bool:
    return degeneracy(g) <= q


def degeneracy_coloring(g: Graph) -> list[int]:
    """Greedy colouring along the degeneracy order; uses at most degeneracy + 1 colours."""
    dord = degeneracy_order(g)
    color = [-1] * g.n
    for v in dord.order:
        taken = {color[w] for w in g.adj[v] if color[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return color


@dataclass(frozen=True)
class HighDegreeCheck:
    count: int
    bound: float
    holds: bool


def high_degree_bound_check(g: Graph, q: int) -> HighDegreeCheck:
    """Count vertices of degree >= 2q+1 against the bound 2q|G|/(2q+1)."""
    if q < 0:
        raise PreconditionError("q must be nonnegative")
    if not is_q_degenerate(g, q):
        raise PreconditionError(f"graph is not {q}-degenerate (degeneracy {degeneracy(g)})")
    count = sum(1 for d in g.degrees() if d >= 2 * q + 1)
    bound = 2 * q * g.n / (2 * q + 1)
    return HighDegreeCheck(count, bound, count <= bound)
