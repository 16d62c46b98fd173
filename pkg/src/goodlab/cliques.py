"""Exact clique statistics: k_r(G), joint size js_p(G), book size, and a
backtracking search for complete multipartite subgraphs.

Counting runs over the degeneracy order: every clique is counted once, from
its earliest vertex, by intersecting forward-neighbour bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from goodlab.degeneracy import degeneracy_order
from goodlab.embedding import Embedding
from goodlab.errors import PreconditionError
from goodlab.graph import Graph, _bits, complete_multipartite, induced_subgraph

PRECONDITION_TOL = 1e-9


def _forward_masks(g: Graph) -> list[int]:
    pos = degeneracy_order(g).position
    later = [0] * g.n
    for v in range(g.n):
        later[v] = sum(1 << w for w in g.adj[v] if pos[w] > pos[v])
    return later


def _count_in(fwd: list[int], cand: int, need: int) -> int:
    if need == 0:
        return 1
    if need == 1:
        return cand.bit_count()
    # fwd is an acyclic orientation, so intersecting the whole candidate set
    # with fwd[v] already counts each clique exactly once.
    full = cand
    if need == 2:
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            total += (full & fwd[low.bit_length() - 1]).bit_count()
        return total
    total = 0
    while cand:
        low = cand & -cand
        cand ^= low
        nxt = full & fwd[low.bit_length() - 1]
        if nxt.bit_count() >= need - 1:
            total += _count_in(fwd, nxt, need - 1)
    return total


def count_cliques(g: Graph, r: int) -> int:
    """Number of r-vertex cliques in g."""
    if r < 1:
        raise ValueError("clique order must be at least 1")
    if r == 1:
        return g.n
    if r == 2:
        return g.num_edges
    fwd = _forward_masks(g)
    total = 0
    for v in range(g.n):
        if fwd[v].bit_count() >= r - 1:
            total += _count_in(fwd, fwd[v], r - 1)
    return total


def iter_cliques(g: Graph, r: int):
    """Yield every r-clique as a sorted tuple (order of generation is deterministic)."""
    if r < 1:
        raise ValueError("clique order must be at least 1")
    fwd = _forward_masks(g)

    def rec(prefix: list[int], cand: int, need: int):
        if need == 0:
            yield tuple(sorted(prefix))
            return
        full = cand
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            nxt = full & fwd[v]
            if nxt.bit_count() >= need - 1:
                prefix.append(v)
                yield from rec(prefix, nxt, need - 1)
                prefix.pop()

    for v in range(g.n):
        if fwd[v].bit_count() >= r - 1:
            yield from rec([v], fwd[v], r - 1)


def clique_number(g: Graph) -> int:
    """omega(G) by branch and bound over bitmasks."""
    best = 1 if g.n else 0
    fwd = _forward_masks(g)

    def rec(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            cand ^= low
            rec(size + 1, cand & g.masks[low.bit_length() - 1])

    for v in range(g.n):
        rec(1, fwd[v])
    return best


@dataclass(frozen=True)
class JointWitness:
    p: int
    edge: tuple[int, int] | None
    size: int
    cliques: tuple[tuple[int, ...], ...] | None = None

    def to_json(self) -> dict:
        out = {"p": self.p, "edge": list(self.edge) if self.edge else [], "size": self.size}
        if self.cliques is not None:
            out["cliques"] = [list(c) for c in self.cliques]
        return out


def joint_size(g: Graph, p: int, with_cliques: bool = False) -> JointWitness:
    """Largest number of p-cliques sharing one edge; lowest edge wins ties."""
    if p < 3:
        raise ValueError("joint size is defined here for p >= 3")
    fwd = _forward_masks(g)
    best_edge, best = None, 0
    for u, v in g.edges:
        common = g.masks[u] & g.masks[v]
        if common.bit_count() < p - 2:
            continue
        size = common.bit_count() if p == 3 else _count_in(fwd, common, p - 2)
        if size > best:
            best_edge, best = (u, v), size
    cliques = None
    if with_cliques and best_edge is not None:
        u, v = best_edge
        common = _bits(g.masks[u] & g.masks[v])
        sub = induced_subgraph(g, common)
        cliques = tuple(
            sorted(tuple(sorted((u, v) + tuple(common[i] for i in c))) for c in iter_cliques(sub, p - 2))
        )
    return JointWitness(p, best_edge, best, cliques)


@dataclass(frozen=True)
class BookWitness:
    p: int
    base: tuple[int, ...]
    size: int
    pages: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"p": self.p, "base": list(self.base), "size": self.size, "pages": list(self.pages)}


def book_size(g: Graph, p: int) -> BookWitness:
    """max over p-cliques Q of |common neighbourhood of Q|; lexicographically least base on ties."""
    if p < 1:
        raise ValueError("book base order must be at least 1")
    best_base: tuple[int, ...] = ()
    best, best_common = -1, 0
    full = (1 << g.n) - 1
    for q in iter_cliques(g, p):
        common = full
        for v in q:
            common &= g.masks[v]
        size = common.bit_count()
        if size > best or (size == best and q < best_base):
            best_base, best, best_common = q, size, common
    if best < 0:
        return BookWitness(p, (), 0)
    return BookWitness(p, best_base, best, tuple(_bits(best_common)))


def find_complete_multipartite(g: Graph, sizes: list[int] | tuple[int, ...]) -> Embedding | None:
    """Place part i on sizes[i] host vertices with all cross-part edges present.

    Edges inside a part are not required. Images inside a part increase, and
    parts of equal size are ordered by their smallest image.
    """
    sizes = tuple(int(s) for s in sizes)
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    pattern = complete_multipartite(sizes)
    if sum(sizes) > g.n:
        return None
    order = sorted(range(len(sizes)), key=lambda i: -sizes[i])
    prev_equal = {}
    last_of_size: dict[int, int] = {}
    for i in order:
        if sizes[i] in last_of_size:
            prev_equal[i] = last_of_size[sizes[i]]
        last_of_size[sizes[i]] = i
    placed: dict[int, list[int]] = {i: [] for i in range(len(sizes))}
    full = (1 << g.n) - 1

    def allowed(part: int, used: int) -> int:
        m = full & ~used
        for j, verts in placed.items():
            if j != part:
                for x in verts:
                    m &= g.masks[x]
        return m

    def rec(k: int, slot: int, used: int) -> bool:
        if k == len(order):
            return True
        part = order[k]
        cand = allowed(part, used)
        if placed[part]:
            cand &= ~((1 << (placed[part][-1] + 1)) - 1)
        elif part in prev_equal:
            cand &= ~((1 << (placed[prev_equal[part]][0] + 1)) - 1)
        if cand.bit_count() < sizes[part] - slot:
            return False
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            placed[part].append(x)
            done = slot + 1 == sizes[part]
            if rec(k + 1 if done else k, 0 if done else slot + 1, used | low):
                return True
            placed[part].pop()
            if cand.bit_count() < sizes[part] - slot:
                return False
        return False

    if not rec(0, 0, 0):
        return None
    mapping = [placed[i][j] for i in range(len(sizes)) for j in range(sizes[i])]
    return Embedding(pattern, g, tuple(mapping))


@dataclass(frozen=True)
class MinDegreeCliqueCheck:
    lhs: int
    rhs: float
    holds: bool


def verify_min_degree_clique_bound(g: Graph, r: int, alpha: float | Fraction) -> MinDegreeCliqueCheck:
    """Check k_{r+1}(G) >= alpha r^2/(r+1) (n/r)^{r+1} under delta(G) >= ((r-1)/r + alpha) n."""
    n = g.n
    if alpha < 0:
        raise PreconditionError("alpha must be nonnegative")
    if r < 2:
        raise PreconditionError(f"need r >= 2, got r={r}")
    omega = clique_number(g)
    if not r < omega:
        raise PreconditionError(f"need r < omega(G); r={r}, omega={omega}")
    need = (Fraction(r - 1, r) + Fraction(alpha)) * n
    if g.min_degree() < need - PRECONDITION_TOL * max(n, 1):
        raise PreconditionError(
            f"min degree bound fails: delta={g.min_degree()} < ((r-1)/r + alpha) n = {float(need):.6g}"
        )
    lhs = count_cliques(g, r + 1)
    rhs = float(alpha) * r * r / (r + 1) * (n / r) ** (r + 1)
    return MinDegreeCliqueCheck(lhs, rhs, lhs >= rhs)
