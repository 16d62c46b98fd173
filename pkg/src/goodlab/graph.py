"""Simple undirected graphs on vertices ``0..n-1`` plus the constructions used
throughout the package: named families, join, power, Cartesian product,
clique blow-up, and graph6 / edge-list / DOT I/O.

Graphs are immutable. Each one carries both neighbour sets and neighbour
bitmasks (Python ints); the search-heavy modules work on the masks.
"""

from __future__ import annotations

import heapq
import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from goodlab.errors import Graph6Error, GraphError, InfeasibleError

__all__ = [
    "Graph",
    "GraphSpec",
    "BlowUp",
    "make_graph",
    "empty_graph",
    "generate",
    "join",
    "disjoint_union",
    "power",
    "cartesian_product",
    "blowup",
    "induced_subgraph",
    "complement",
    "components",
    "largest_component_order",
    "is_connected",
    "is_tree",
    "bfs_distances",
    "encode_graph6",
    "decode_graph6",
    "to_edge_list",
    "from_edge_list",
    "to_dot",
    "RESTART_CAP",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "complete_multipartite",
    "subdivided_complete",
    "grid_graph",
    "random_tree",
    "random_gnp",
    "random_regular",
]

RESTART_CAP = 10_000


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is a frozenset of neighbours and ``masks[v]`` the same set as
    a bitmask. Equality compares order and edge set.
    """

    __slots__ = ("n", "adj", "masks", "_edges")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        self.masks = tuple(sum(1 << u for u in a) for a in self.adj)
        self._edges = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        g = cls.__new__(cls)
        g.n = len(masks)
        g.masks = tuple(masks)
        g.adj = tuple(frozenset(_bits(m)) for m in masks)
        g._edges = None
        return g

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.num_edges})"

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def edges_between(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        """e(X, Y): edges with one end in X and the other in Y (X, Y disjoint)."""
        ymask = _mask(ys)
        return sum((self.masks[x] & ymask).bit_count() for x in xs)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


def empty_graph(n: int) -> Graph:
    return Graph(n, [()] * n)


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

KINDS = (
    "path",
    "cycle",
    "complete",
    "complete_multipartite",
    "book",
    "wheel",
    "star",
    "subdivided_complete",
    "grid",
    "random_tree",
    "random_regular",
    "random_gnp",
)


@dataclass(frozen=True)
class GraphSpec:
    """A named graph family member.

    Parameters by kind (vertex order in brackets):

    * ``path(n)``            [0-1-...-(n-1)]
    * ``cycle(n)``           [path plus (n-1, 0)], n >= 3
    * ``complete(n)``
    * ``complete_multipartite(s1, s2, ...)`` [parts laid out consecutively]
    * ``book(q, m)``         K_q + m K_1 [base clique 0..q-1, pages after]
    * ``wheel(n)``           K_1 + C_n [hub 0, rim 1..n], n >= 3
    * ``star(m)``            K_{1,m} [centre 0]
    * ``subdivided_complete(n)`` [branch vertices 0..n-1, then one vertex
      per pair (i, j), pairs in lexicographic order]
    * ``grid(n, k)``         k-fold Cartesian power of P_n [lexicographic
      coordinate order]
    * ``random_tree(n)``     uniform labelled tree via a Pruefer sequence
    * ``random_regular(n, d)``
    * ``random_gnp(n)`` with ``real`` = edge probability
    """

    kind: str
    params: tuple[int, ...] = ()
    real: float | None = None
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        self.validate()

    def validate(self) -> None:
        k, p = self.kind, self.params
        if k not in KINDS:
            raise GraphError(f"unknown graph kind {k!r}")

        def need(count: int) -> None:
            if len(p) != count:
                raise GraphError(f"{k} takes {count} integer parameter(s), got {len(p)}")

        if k in ("path", "complete", "star", "random_tree", "subdivided_complete"):
            need(1)
            if p[0] < (1 if k == "path" or k == "random_tree" else 0):
                raise GraphError(f"{k} needs a positive order")
        elif k in ("cycle", "wheel"):
            need(1)
            if p[0] < 3:
                raise GraphError(f"{k} needs n >= 3")
        elif k == "complete_multipartite":
            if not p or min(p) < 1:
                raise GraphError("complete_multipartite needs positive part sizes")
        elif k == "book":
            need(2)
            if p[0] < 1 or p[1] < 0:
                raise GraphError("book requires q >= 1 and m >= 0")
        elif k == "grid":
            need(2)
            if p[0] < 1 or p[1] < 1:
                raise GraphError("grid requires n >= 1 and k >= 1")
        elif k == "random_regular":
            need(2)
            if p[0] < 0 or p[1] < 0:
                raise GraphError("random_regular requires n, d >= 0")
        elif k == "random_gnp":
            need(1)
            if self.real is None or not 0.0 <= self.real <= 1.0:
                raise GraphError("random_gnp needs an edge probability in [0, 1]")


def generate(spec: GraphSpec) -> Graph:
    k, p = spec.kind, spec.params
    if k == "path":
        return path_graph(p[0])
    if k == "cycle":
        return cycle_graph(p[0])
    if k == "complete":
        return complete_graph(p[0])
    if k == "complete_multipartite":
        return complete_multipartite(p)
    if k == "book":
        return join(complete_graph(p[0]), empty_graph(p[1]))
    if k == "wheel":
        return join(complete_graph(1), cycle_graph(p[0]))
    if k == "star":
        return join(complete_graph(1), empty_graph(p[0]))
    if k == "subdivided_complete":
        return subdivided_complete(p[0])
    if k == "grid":
        return grid_graph(p[0], p[1])
    rng = random.Random(spec.seed if spec.seed is not None else 0)
    if k == "random_tree":
        return random_tree(p[0], rng)
    if k == "random_regular":
        return random_regular(p[0], p[1], rng)
    if k == "random_gnp":
        return random_gnp(p[0], spec.real, rng)
    raise GraphError(f"unknown graph kind {k!r}")  # pragma: no cover


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph.from_masks([full & ~(1 << v) for v in range(n)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    full = (1 << n) - 1
    masks = []
    start = 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        masks.extend([full & ~part] * s)
        start += s
    return Graph.from_masks(masks)


def subdivided_complete(n: int) -> Graph:
    edges = []
    for idx, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        s = n + idx
        edges += [(i, s), (j, s)]
    return make_graph(n + n * (n - 1) // 2, edges)


def grid_graph(n: int, k: int) -> Graph:
    g = path_graph(n)
    for _ in range(k - 1):
        g = cartesian_product(g, path_graph(n))
    return g


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree decoded from a random Pruefer sequence."""
    if n == 1:
        return empty_graph(1)
    if n == 2:
        return make_graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return make_graph(n, edges)


def random_gnp(n: int, prob: float, rng: random.Random) -> Graph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob])


def random_regular(n: int, d: int, rng: random.Random) -> Graph:
    """Random simple d-regular graph from the pairing model.

    Points are paired one random pair at a time; a pair that would create a
    loop or a multi-edge is redrawn, and if no admissible pair is left the
    whole pairing restarts (at most ``RESTART_CAP`` times).
    """
    if d >= n and n > 0 or (n * d) % 2 == 1:
        raise InfeasibleError(f"no simple {d}-regular graph on {n} vertices")
    if d == 0:
        return empty_graph(n)
    for _ in range(RESTART_CAP):
        masks = _try_pairing(n, d, rng)
        if masks is not None:
            return Graph.from_masks(masks)
    raise InfeasibleError(f"pairing model failed {RESTART_CAP} times for n={n}, d={d}")


def _try_pairing(n: int, d: int, rng: random.Random) -> list[int] | None:
    masks = [0] * n
    points = [v for v in range(n) for _ in range(d)]
    while points:
        m = len(points)
        for _ in range(4 * m + 100):
            i, j = rng.randrange(m), rng.randrange(m)
            u, v = points[i], points[j]
            if u != v and not (masks[u] >> v) & 1:
                break
        else:
            # Rejection stalled: fall back to an explicit scan of admissible pairs.
            admissible = [
                (i, j)
                for i in range(m)
                for j in range(i + 1, m)
                if points[i] != points[j] and not (masks[points[i]] >> points[j]) & 1
            ]
            if not admissible:
                return None
            i, j = admissible[rng.randrange(len(admissible))]
            u, v = points[i], points[j]
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        for idx in sorted((i, j), reverse=True):
            points[idx] = points[-1]
            points.pop()
    return masks


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph.from_masks(list(g.masks) + [m << shift for m in h.masks])


def join(g: Graph, h: Graph) -> Graph:
    """G + H: disjoint union plus every edge between the two sides."""
    gfull = (1 << g.n) - 1
    hfull = ((1 << h.n) - 1) << g.n
    masks = [m | hfull for m in g.masks] + [(m << g.n) | gfull for m in h.masks]
    return Graph.from_masks(masks)


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def power(g: Graph, k: int) -> Graph:
    """k-th power: u ~ v iff 1 <= dist(u, v) <= k."""
    if k < 1:
        raise GraphError("graph power needs k >= 1")
    masks = []
    for v in range(g.n):
        reach = 1 << v
        frontier = reach
        for _ in range(k):
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.masks[u]
            frontier = nxt & ~reach
            if not frontier:
                break
            reach |= frontier
        masks.append(reach & ~(1 << v))
    return Graph.from_masks(masks)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex (a, b) is numbered ``a * |H| + b``."""
    m = h.n
    edges = []
    for a in range(g.n):
        for b, c in h.edges:
            edges.append((a * m + b, a * m + c))
    for a, a2 in g.edges:
        for b in range(m):
            edges.append((a * m + b, a2 * m + b))
    return make_graph(g.n * m, edges)


@dataclass(frozen=True)
class BlowUp:
    graph: Graph
    ancestor: tuple[int, ...]
    sizes: tuple[int, ...]

    def fibre(self, v: int) -> list[int]:
        return [x for x, a in enumerate(self.ancestor) if a == v]


def blowup(g: Graph, sizes: Sequence[int]) -> BlowUp:
    """Replace vertex i by a clique of order sizes[i], edges by complete bipartite graphs.

    New vertices are numbered fibre by fibre in the order of their ancestors.
    """
    if len(sizes) != g.n:
        raise GraphError(f"blow-up vector has length {len(sizes)}, graph has order {g.n}")
    if any(s < 1 for s in sizes):
        raise GraphError("blow-up sizes must be positive")
    ancestor = [v for v in range(g.n) for _ in range(sizes[v])]
    offsets = list(itertools.accumulate(sizes, initial=0))
    fibre_mask = [((1 << sizes[v]) - 1) << offsets[v] for v in range(g.n)]
    masks = []
    for x, a in enumerate(ancestor):
        m = fibre_mask[a] & ~(1 << x)
        for b in g.adj[a]:
            m |= fibre_mask[b]
        masks.append(m)
    return BlowUp(Graph.from_masks(masks), tuple(ancestor), tuple(int(s) for s in sizes))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """G[W] relabelled so that ``vertices[i]`` becomes i."""
    index = {v: i for i, v in enumerate(vertices)}
    adj = [[index[w] for w in g.adj[v] if w in index] for v in vertices]
    return Graph(len(vertices), adj)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph.from_masks([full & ~m & ~(1 << v) for v, m in enumerate(g.masks)])


def components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of G - removed, each sorted, listed by smallest vertex."""
    gone = _mask(removed)
    alive = ((1 << g.n) - 1) & ~gone
    out = []
    while alive:
        start = alive & -alive
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.masks[u]
            frontier = nxt & alive & ~comp
            comp |= frontier
        alive &= ~comp
        out.append(_bits(comp))
    return out


def largest_component_order(g: Graph, removed: Iterable[int] = ()) -> int:
    return max((len(c) for c in components(g, removed)), default=0)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges == g.n - 1 and is_connected(g)


# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------


def _graph6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError("graph too large for graph6")


def encode_graph6(g: Graph) -> bytes:
    """graph6 encoding (no header): size field, then the upper triangle column by column."""
    bits = [(g.masks[j] >> i) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return _graph6_size(g.n) + body


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("non-ASCII character", exc.start) from None
    data = data.strip()
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10
    for i in range(pos, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"byte {data[i]:#04x} outside the graph6 range 63..126", i)
    if pos >= len(data):
        raise Graph6Error("missing size field", pos)
    if data[pos] != 126:
        n, pos = data[pos] - 63, pos + 1
    elif pos + 1 < len(data) and data[pos + 1] == 126:
        size_field = data[pos + 2 : pos + 8]
        if len(size_field) < 6:
            raise Graph6Error("truncated 8-byte size field", len(data))
        n, pos = _sixbits(size_field), pos + 8
    else:
        size_field = data[pos + 1 : pos + 4]
        if len(size_field) < 3:
            raise Graph6Error("truncated 4-byte size field", len(data))
        n, pos = _sixbits(size_field), pos + 4
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        raise Graph6Error(
            f"expected {expected} edge bytes for n={n}, found {len(body)}", pos + min(len(body), expected)
        )
    bits = []
    for b in body:
        bits.extend((b - 63) >> s & 1 for s in range(5, -1, -1))
    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", len(data) - 1)
    return Graph.from_masks(masks)


def _sixbits(field: bytes) -> int:
    n = 0
    for b in field:
        n = (n << 6) | (b - 63)
    return n


def to_edge_list(g: Graph) -> str:
    """One ``u v`` line per edge; a leading ``# n=<order>`` line keeps isolated vertices."""
    lines = [f"# n={g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str, n: int | None = None) -> Graph:
    edges = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip().startswith("n="):
                declared = int(line[1:].strip()[2:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
    if n is None:
        n = declared if declared is not None else 1 + max((max(e) for e in edges), default=-1)
    return make_graph(n, edges)


def to_dot(g: Graph, name: str = "G", colors: dict[tuple[int, int], str] | None = None) -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    for u, v in g.edges:
        attr = f' [color="{colors[(u, v)]}"]' if colors and (u, v) in colors else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
