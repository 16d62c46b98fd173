"""Two-colourings of complete graphs and exhaustive Ramsey/arrowing search.

A colouring is stored as its red graph R on N vertices; blue is everything
else. The search colours the edges of K_N vertex by vertex, (0,1), (0,2),
(1,2), (0,3), ..., and checks after every assignment whether the new edge
completes a red H1 or a blue H2. Any copy of H1 in R contains some edge that
was coloured last among its edges, so these anchored checks find every copy.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache

from goodlab.cliques import count_cliques
from goodlab.embedding import find_monomorphism
from goodlab.errors import ScaleError
from goodlab.graph import Graph, _bits, complement, complete_multipartite, encode_graph6

PENTAGON_SUBSET_LIMIT = 5_000_000


@dataclass(frozen=True)
class TwoColoring:
    N: int
    red: Graph

    @property
    def blue(self) -> Graph:
        return complement(self.red)

    def is_red(self, u: int, v: int) -> bool:
        return u != v and self.red.has_edge(u, v)

    def is_blue(self, u: int, v: int) -> bool:
        return u != v and not self.red.has_edge(u, v)

    def restrict(self, m: int) -> TwoColoring:
        mask = (1 << m) - 1
        return TwoColoring(m, Graph.from_masks([r & mask for r in self.red.masks[:m]]))

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "red_g6": encode_graph6(self.red).decode(),
            "blue_g6": encode_graph6(self.blue).decode(),
        }


def goodness_lower_coloring(p: int, n: int) -> TwoColoring:
    """K_{(p-1)(n-1)}: blue is p-1 disjoint copies of K_{n-1}, red the complete (p-1)-partite rest."""
    if p < 2 or n < 2:
        raise ValueError("need p >= 2 and n >= 2")
    red = complete_multipartite([n - 1] * (p - 1))
    return TwoColoring(red.n, red)


def pentagon_part_sizes(n: int) -> list[int]:
    """Sizes of V1..V5 partitioning [2n-1], smaller parts first."""
    total = 2 * n - 1
    base, extra = divmod(total, 5)
    return [base] * (5 - extra) + [base + 1] * extra


def pentagon_parts(n: int) -> list[int]:
    """Part index (0..4) of each vertex of K_{2n-1}; parts are consecutive blocks."""
    return [i for i, s in enumerate(pentagon_part_sizes(n)) for _ in range(s)]


def pentagon_coloring(n: int) -> TwoColoring:
    """Red joins parts whose indices differ by +-1 mod 5 (a blow-up of C5)."""
    if n < 3:
        raise ValueError("pentagon colouring needs n >= 3")
    part = pentagon_parts(n)
    total = len(part)
    masks = []
    for u in range(total):
        m = 0
        for v in range(total):
            if (part[u] - part[v]) % 5 in (1, 4):
                m |= 1 << v
        masks.append(m)
    return TwoColoring(total, Graph.from_masks(masks))


def c5_blowup_biclique(counts) -> int:
    """Largest |A||B| over complete bipartite subgraphs of a C5 blow-up with part sizes ``counts``.

    All of A must sit in parts adjacent to every part used by B. Two parts of
    C5 at distance 1 have no common neighbour and two at distance 2 have
    exactly one, so one side always lies in a single part i and the other in
    parts i-1 and i+1.
    """
    return max(counts[i] * (counts[i - 1] + counts[(i + 1) % 5]) for i in range(5))


@dataclass(frozen=True)
class PentagonQ:
    n: int
    q: int
    argmin: tuple[int, ...]
    counts: tuple[int, ...]
    subsets: int
    method: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "argmin_subset": list(self.argmin),
            "part_counts": list(self.counts),
            "subsets": self.subsets,
            "method": self.method,
        }


def pentagon_q(n: int, mode: str = "exhaustive", samples: int = 100_000, seed: int = 0) -> PentagonQ:
    """min over n-subsets X of [2n-1] of the largest red complete bipartite subgraph in X.

    ``exhaustive`` enumerates every subset (refusing above
    ``PENTAGON_SUBSET_LIMIT``); ``sampled`` draws random subsets and so
    reports an upper bound on q(n).
    """
    if n < 3:
        raise ValueError("pentagon_q needs n >= 3")
    part = pentagon_parts(n)
    total = len(part)
    value = lru_cache(maxsize=None)(c5_blowup_biclique)

    def counts_of(xs):
        c = [0] * 5
        for x in xs:
            c[part[x]] += 1
        return tuple(c)

    if mode == "exhaustive":
        count = math.comb(total, n)
        if count > PENTAGON_SUBSET_LIMIT:
            raise ScaleError(f"C({total}, {n}) = {count} subsets exceeds the exhaustive limit")
        best = None
        for xs in itertools.combinations(range(total), n):
            c = counts_of(xs)
            v = value(c)
            if best is None or v < best[0]:
                best = (v, xs, c)
        return PentagonQ(n, best[0], best[1], best[2], count, "exhaustive")
    if mode == "sampled":
        rng = random.Random(seed)
        best = None
        for _ in range(samples):
            xs = tuple(sorted(rng.sample(range(total), n)))
            c = counts_of(xs)
            v = value(c)
            if best is None or v < best[0]:
                best = (v, xs, c)
        return PentagonQ(n, best[0], best[1], best[2], samples, "sampled")
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Arrowing
# ---------------------------------------------------------------------------


class _Pattern:
    """Precomputed edge-anchored search plans for one forbidden pattern."""

    def __init__(self, h: Graph):
        self.h = h
        self.complete = h.num_edges == h.n * (h.n - 1) // 2
        self.plans = []
        for a, b in h.edges:
            for x, y in ((a, b), (b, a)):
                order = [x, y]
                placed = {x, y}
                while len(order) < h.n:
                    v = max(
                        (w for w in range(h.n) if w not in placed),
                        key=lambda w: (len(h.adj[w] & placed), h.degree(w), -w),
                    )
                    order.append(v)
                    placed.add(v)
                pos = {v: i for i, v in enumerate(order)}
                back = [tuple(pos[w] for w in h.adj[v] if pos[w] < i) for i, v in enumerate(order)]
                self.plans.append(back)
            if self.complete:
                break  # every edge of a clique is equivalent

    def through(self, masks: list[int], u: int, v: int, full: int) -> bool:
        """Does the graph given by ``masks`` contain a copy using edge uv?"""
        h = self.h
        if self.complete:
            return _has_clique(masks, masks[u] & masks[v], h.n - 2)
        for back in self.plans:
            img = [u, v] + [0] * (h.n - 2)
            if _extend(masks, back, img, 2, full & ~(1 << u) & ~(1 << v), full):
                return True
        return False


def _has_clique(masks: list[int], cand: int, need: int) -> bool:
    if need <= 0:
        return True
    if need == 1:
        return cand != 0
    while cand:
        if cand.bit_count() < need:
            return False
        low = cand & -cand
        cand ^= low
        if _has_clique(masks, cand & masks[low.bit_length() - 1], need - 1):
            return True
    return False


def _extend(masks, back, img, k, free, full) -> bool:
    if k == len(back):
        return True
    cand = free
    for j in back[k]:
        cand &= masks[img[j]]
    while cand:
        low = cand & -cand
        cand ^= low
        img[k] = low.bit_length() - 1
        if _extend(masks, back, img, k + 1, free & ~low, full):
            return True
    return False


@dataclass(frozen=True)
class ArrowResult:
    N: int
    arrows: bool
    witness: TwoColoring | None
    nodes: int
    search: str = "vertex-extension"

    def to_json(self) -> dict:
        out = {"N": self.N, "arrows": self.arrows, "nodes": self.nodes, "method": "exhaustive", "search": self.search}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _trivial_arrowing(N: int, h1: Graph, h2: Graph) -> ArrowResult | None:
    if h1.n == 0 or h2.n == 0:
        return ArrowResult(N, True, None, 0)
    # edgeless patterns are present as soon as there are enough vertices
    if h1.num_edges == 0 and N >= h1.n or h2.num_edges == 0 and N >= h2.n:
        return ArrowResult(N, True, None, 0)
    if N < 2:
        return ArrowResult(N, False, TwoColoring(N, Graph.from_masks([0] * N)), 0)
    return None


def check_arrowing(
    N: int, h1: Graph, h2: Graph, node_limit: int | None = None, symmetry: bool = True
) -> ArrowResult:
    """Does every red/blue colouring of K_N contain a red h1 or a blue h2?

    With ``symmetry`` the search keeps one good colouring of K_v per
    isomorphism class and extends each by a new vertex, colouring its v
    edges by backtracking (red before blue). Every good colouring of
    K_{v+1} restricts to a good colouring of K_v, so nothing is lost.
    Without it the search is one backtracking pass over all edges of K_N.
    When the answer is no, the witness is the first good colouring of K_N
    reached, a deterministic choice.
    """
    trivial = _trivial_arrowing(N, h1, h2)
    if trivial is not None:
        return trivial
    p1, p2 = _Pattern(h1), _Pattern(h2)
    if not symmetry:
        return _plain_arrowing(N, p1, p2, node_limit)
    level = [[0]]
    nodes = 0
    for v in range(1, N):
        reps: dict[tuple, list[list[int]]] = {}
        ordered: list[list[int]] = []
        for red in level:
            for ext in _extensions(red, v, p1, p2):
                nodes += 1
                if node_limit is not None and nodes > node_limit:
                    raise ScaleError(f"arrowing search exceeded {node_limit} nodes")
                bucket = reps.setdefault(_invariant(ext), [])
                if any(_isomorphic(ext, other) for other in bucket):
                    continue
                bucket.append(ext)
                ordered.append(ext)
        if not ordered:
            return ArrowResult(N, True, None, nodes)
        level = ordered
    return ArrowResult(N, False, TwoColoring(N, Graph.from_masks(level[0])), nodes)


def _extensions(red: list[int], v: int, p1: _Pattern, p2: _Pattern):
    """Every good colouring of K_{v+1} that restricts to ``red`` on the first v vertices."""
    full = (1 << (v + 1)) - 1
    rmask = list(red) + [0]
    bmask = [((1 << v) - 1) & ~r & ~(1 << u) for u, r in enumerate(red)] + [0]

    def rec(u: int):
        if u == v:
            yield list(rmask)
            return
        bu, bv = 1 << u, 1 << v
        rmask[u] |= bv
        rmask[v] |= bu
        if not p1.through(rmask, u, v, full):
            yield from rec(u + 1)
        rmask[u] ^= bv
        rmask[v] ^= bu
        bmask[u] |= bv
        bmask[v] |= bu
        if not p2.through(bmask, u, v, full):
            yield from rec(u + 1)
        bmask[u] ^= bv
        bmask[v] ^= bu

    yield from rec(0)


def _invariant(masks: list[int]) -> tuple:
    """Isomorphism invariant of a red graph: per-vertex degree, triangles, neighbour degrees."""
    deg = [m.bit_count() for m in masks]
    rows = []
    for u, m in enumerate(masks):
        nbrs = _bits(m)
        tri = sum((masks[w] & m).bit_count() for w in nbrs)
        rows.append((deg[u], tri, tuple(sorted(deg[w] for w in nbrs))))
    return tuple(sorted(rows))


def _isomorphic(a: list[int], b: list[int]) -> bool:
    ga, gb = Graph.from_masks(a), Graph.from_masks(b)
    if ga.num_edges != gb.num_edges:
        return False
    # equal order and size: a monomorphism is an isomorphism
    return find_monomorphism(ga, gb) is not None


def _plain_arrowing(N: int, p1: _Pattern, p2: _Pattern, node_limit: int | None) -> ArrowResult:
    full = (1 << N) - 1
    edges = [(u, v) for v in range(1, N) for u in range(v)]
    red = [0] * N
    blue = [0] * N
    nodes = 0

    def rec(i: int) -> bool:
        # True when a good colouring (no red h1, no blue h2) extends the prefix
        nonlocal nodes
        if i == len(edges):
            return True
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise ScaleError(f"arrowing search exceeded {node_limit} nodes")
        u, v = edges[i]
        bu, bv = 1 << u, 1 << v
        red[u] |= bv
        red[v] |= bu
        if not p1.through(red, u, v, full) and rec(i + 1):
            return True
        red[u] ^= bv
        red[v] ^= bu
        blue[u] |= bv
        blue[v] |= bu
        if not p2.through(blue, u, v, full) and rec(i + 1):
            return True
        blue[u] ^= bv
        blue[v] ^= bu
        return False

    if rec(0):
        return ArrowResult(N, False, TwoColoring(N, Graph.from_masks(list(red))), nodes, "edge-backtracking")
    return ArrowResult(N, True, None, nodes, "edge-backtracking")


def is_good_coloring(c: TwoColoring, h1: Graph, h2: Graph) -> bool:
    """True when c avoids red h1 and blue h2 (checked by plain subgraph search)."""
    return find_monomorphism(h1, c.red) is None and find_monomorphism(h2, c.blue) is None


def _clique_order(h: Graph) -> int | None:
    return h.n if h.num_edges == h.n * (h.n - 1) // 2 else None


@dataclass(frozen=True)
class RamseyResult:
    r: int | None
    witness: TwoColoring | None
    trace: tuple[tuple[int, str], ...]

    def to_json(self) -> dict:
        out = {"r": self.r, "trace": [{"N": n, "via": via} for n, via in self.trace]}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def ramsey_number(h1: Graph, h2: Graph, n_max: int, node_limit: int | None = None) -> RamseyResult:
    """Least N <= n_max arrowing (h1, h2), or r=None when none does.

    Each N below the answer is dismissed either by a known construction
    (the goodness colouring, the pentagon colouring, restricted to N
    vertices) or by the exhaustive search, which also supplies the witness.
    """
    witnesses = []
    p = _clique_order(h1)
    if p is not None and p >= 2 and h2.n >= 2:
        witnesses.append(("goodness_coloring", goodness_lower_coloring(p, h2.n)))
    witnesses.append(("pentagon_coloring", pentagon_coloring(max(3, (n_max + 2) // 2))))
    trace = []
    last_witness = None
    for N in range(1, n_max + 1):
        hit = None
        for name, col in witnesses:
            if col.N >= N:
                sub = col.restrict(N)
                if is_good_coloring(sub, h1, h2):
                    hit = (name, sub)
                    break
        if hit is not None:
            trace.append((N, hit[0]))
            last_witness = hit[1]
            continue
        res = check_arrowing(N, h1, h2, node_limit)
        trace.append((N, "exhaustive"))
        if res.arrows:
            return RamseyResult(N, last_witness, tuple(trace))
        last_witness = res.witness
    return RamseyResult(None, last_witness, tuple(trace))


def red_is_kp_free(c: TwoColoring, p: int) -> bool:
    return count_cliques(c.red, p) == 0
