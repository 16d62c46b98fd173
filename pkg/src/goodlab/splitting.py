"""(gamma, eta)-splittability: certificates, separator search, the tree
splitter, separator trimming, and the transfer constructions for powers,
Cartesian products, blow-ups and joins.

A graph of order n is (gamma, eta)-splittable when some S has
|S| < n^(1 - gamma) (strict, compared as reals) and every component of
G - S has order at most eta * n.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from goodlab.degeneracy import degeneracy, is_q_degenerate
from goodlab.errors import PreconditionError
from goodlab.graph import (
    BlowUp,
    Graph,
    GraphSpec,
    _bits,
    _mask,
    cartesian_product,
    components,
    complete_graph,
    generate,
    is_tree,
    join,
    largest_component_order,
    path_graph,
    power,
)

# Slack for comparing component orders with the real number eta * n.
ETA_TOL = 1e-9

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class SplitCertificate:
    gamma: float
    eta: float
    separator: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    method: str = "given"
    exhaustive: bool = False

    @property
    def component_sizes(self) -> list[int]:
        return [len(c) for c in self.components]

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "eta": self.eta,
            "separator": list(self.separator),
            "component_sizes": self.component_sizes,
            "method": self.method,
            "exhaustive": self.exhaustive,
        }


def certificate(g: Graph, separator: Iterable[int], gamma: float, eta: float, method: str = "given", exhaustive: bool = False) -> SplitCertificate:
    sep = tuple(sorted(set(separator)))
    comps = tuple(tuple(c) for c in components(g, sep))
    return SplitCertificate(gamma, eta, sep, comps, method, exhaustive)


def separator_bound(n: int, gamma: float) -> float:
    return n ** (1 - gamma)


def max_separator_size(n: int, gamma: float) -> int:
    """Largest integer s with s < n^(1 - gamma)."""
    bound = separator_bound(n, gamma)
    s = math.ceil(bound) - 1
    return max(s, 0) if bound > 0 else -1


def check_split(g: Graph, cert: SplitCertificate) -> bool:
    n = g.n
    if not 0 < cert.gamma < 1 or not 0 < cert.eta <= 1:
        return False
    sep = set(cert.separator)
    if len(sep) != len(cert.separator) or any(not 0 <= v < n for v in sep):
        return False
    if not len(sep) < separator_bound(n, cert.gamma):
        return False
    actual = {tuple(c) for c in components(g, sep)}
    claimed = {tuple(sorted(c)) for c in cert.components}
    if actual != claimed or len(claimed) != len(cert.components):
        return False
    return all(len(c) <= cert.eta * n + ETA_TOL for c in actual)


def _eta_ok(g: Graph, sep, eta: float) -> bool:
    return largest_component_order(g, sep) <= eta * g.n + ETA_TOL


def find_split(g: Graph, gamma: float, eta: float, budget: int = DEFAULT_BUDGET) -> tuple[SplitCertificate | None, bool]:
    """Search for a certificate. Returns (certificate or None, exhaustive).

    Exhaustive over every S with |S| < n^(1 - gamma), smallest and then
    lexicographically least first, when the number of such sets fits the
    budget; ``None`` is then a proof of non-splittability. Otherwise the
    heuristics run (tree splitter on trees, degree peeling, BFS-layer cuts)
    and ``None`` only means they missed.
    """
    if not 0 < gamma < 1 or not 0 < eta <= 1:
        raise PreconditionError("need 0 < gamma < 1 and 0 < eta <= 1")
    n = g.n
    smax = max_separator_size(n, gamma)
    effort = sum(math.comb(n, s) for s in range(smax + 1)) if smax >= 0 else 0
    if effort <= budget:
        for s in range(smax + 1):
            for sep in itertools.combinations(range(n), s):
                if _eta_ok(g, sep, eta):
                    return certificate(g, sep, gamma, eta, "exhaustive", True), True
        return None, True
    for method, sep in _heuristic_separators(g, eta, smax):
        if sep is not None and len(sep) <= smax and _eta_ok(g, sep, eta):
            return certificate(g, sep, gamma, eta, method, False), False
    return None, False


def _heuristic_separators(g: Graph, eta: float, smax: int):
    limit = eta * g.n + ETA_TOL
    if is_tree(g) and g.n >= 2:
        k = max(1, math.ceil(math.log2(1 / eta))) if eta < 1 else 1
        yield "tree_split", tree_split(g, k)
    yield "degree_peeling", _peel_by_degree(g, limit, smax)
    yield "bfs_layers", _bfs_layer_cuts(g, limit, smax)


def _largest(g: Graph, sep: set[int]) -> list[int]:
    return max(components(g, sep), key=len, default=[])


def _peel_by_degree(g: Graph, limit: float, smax: int) -> list[int] | None:
    sep: set[int] = set()
    while len(sep) <= smax:
        comp = _largest(g, sep)
        if len(comp) <= limit:
            return sorted(sep)
        cm = _mask(comp)
        v = max(comp, key=lambda u: ((g.masks[u] & cm).bit_count(), -u))
        sep.add(v)
    return None


def _bfs_layer_cuts(g: Graph, limit: float, smax: int) -> list[int] | None:
    sep: set[int] = set()
    while len(sep) <= smax:
        comp = _largest(g, sep)
        if len(comp) <= limit:
            return sorted(sep)
        cm = _mask(comp)
        # start from a vertex far from comp[0] so the layers sweep the component
        start = _layers(g, comp[0], cm)[-1][0]
        layers = _layers(g, start, cm)
        if len(layers) < 3:
            v = max(comp, key=lambda u: ((g.masks[u] & cm).bit_count(), -u))
            sep.add(v)
            continue
        sizes = [len(layer) for layer in layers]
        total = len(comp)
        best, best_key = None, None
        before = 0
        for j in range(1, len(layers) - 1):
            before += sizes[j - 1]
            after = total - before - sizes[j]
            key = (max(before, after) + sizes[j] * total, j)
            if best_key is None or key < best_key:
                best, best_key = j, key
        sep.update(layers[best])
    return None


def _layers(g: Graph, start: int, alive: int) -> list[list[int]]:
    seen = 1 << start
    frontier = 1 << start
    out = []
    while frontier:
        out.append(_bits(frontier))
        nxt = 0
        for u in _bits(frontier):
            nxt |= g.masks[u]
        frontier = nxt & alive & ~seen
        seen |= frontier
    return out


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


def _centroid(g: Graph, comp: Sequence[int], alive: int) -> int:
    """Vertex of the (tree) component minimising its largest remaining piece."""
    root = comp[0]
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in g.adj[u]:
            if (alive >> w) & 1 and w not in parent:
                parent[w] = u
                order.append(w)
    size = {u: 1 for u in order}
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    total = len(order)
    best, best_key = root, None
    for u in order:
        piece = total - size[u]
        for w in g.adj[u]:
            if (alive >> w) & 1 and parent.get(w) == u:
                piece = max(piece, size[w])
        key = (piece, u)
        if best_key is None or key < best_key:
            best, best_key = u, key
    return best


def _split_pair(g: Graph, comp: list[int], alive: int) -> list[int]:
    c = _centroid(g, comp, alive)
    rest = alive & ~(1 << c)
    pieces = [p for p in components_within(g, comp, rest)]
    if not pieces:
        return [c]
    biggest = max(pieces, key=lambda p: (len(p), -p[0]))
    return [c, _centroid(g, biggest, rest)]


def components_within(g: Graph, vertices: Sequence[int], alive: int) -> list[list[int]]:
    pending = _mask(vertices) & alive
    out = []
    while pending:
        start = pending & -pending
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.masks[u]
            frontier = nxt & pending & ~comp
            comp |= frontier
        pending &= ~comp
        out.append(_bits(comp))
    return out


def tree_split(t: Graph, k: int) -> list[int]:
    """Separator S_k of a tree with |S_k| <= 2^(k+2) - 6 and psi(T - S_k) <= n / 2^k.

    Level j = 1..k: every component of order > n / 2^j loses two vertices,
    its centroid and the centroid of its largest remaining piece, leaving
    pieces of at most half its order.
    """
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    if t.n < 2:
        raise PreconditionError("tree_split needs n >= 2")
    if not is_tree(t):
        raise PreconditionError("tree_split needs a tree")
    n = t.n
    sep: set[int] = set()
    for j in range(1, k + 1):
        alive = ((1 << n) - 1) & ~_mask(sep)
        for comp in components(t, sep):
            if len(comp) * 2**j > n:
                sep.update(_split_pair(t, comp, alive))
    return sorted(sep)


# ---------------------------------------------------------------------------
# Trimming
# ---------------------------------------------------------------------------


def trim(g: Graph, s0: Iterable[int], q: int, eta: float | None = None) -> tuple[int, ...]:
    """Grow S0 until no outside vertex has 2q+1 or more neighbours inside.

    The result is the least such superset, so the order of additions does not
    matter; lowest index goes first.
    """
    s0 = set(s0)
    if not is_q_degenerate(g, q):
        raise PreconditionError(f"graph is not {q}-degenerate (degeneracy {degeneracy(g)})")
    if eta is not None and not _eta_ok(g, s0, eta):
        raise PreconditionError(
            f"largest component of G - S0 has order {largest_component_order(g, s0)} > eta n = {eta * g.n:.6g}"
        )
    inside = [False] * g.n
    count = [0] * g.n
    for v in s0:
        inside[v] = True
    for v in s0:
        for w in g.adj[v]:
            count[w] += 1
    heap = [u for u in range(g.n) if not inside[u] and count[u] >= 2 * q + 1]
    heapq.heapify(heap)
    while heap:
        u = heapq.heappop(heap)
        if inside[u]:
            continue
        inside[u] = True
        for w in g.adj[u]:
            count[w] += 1
            if not inside[w] and count[w] == 2 * q + 1:
                heapq.heappush(heap, w)
    return tuple(v for v in range(g.n) if inside[v])


# ---------------------------------------------------------------------------
# Transfers
# ---------------------------------------------------------------------------


@dataclass
class TransferResult:
    graph: Graph
    constructed: SplitCertificate
    valid: bool
    diagnostic: str = ""
    fallback: SplitCertificate | None = None
    fallback_exhaustive: bool = False
    extras: dict = field(default_factory=dict)

    @property
    def best(self) -> SplitCertificate | None:
        return self.constructed if self.valid else self.fallback

    def to_json(self) -> dict:
        out = {
            "constructed": self.constructed.to_json(),
            "valid_at_this_n": self.valid,
            "diagnostic": self.diagnostic,
            "order": self.graph.n,
        }
        if self.fallback is not None or not self.valid:
            out["fallback"] = self.fallback.to_json() if self.fallback else None
        return out


def _finish(graph: Graph, sep, gamma: float, eta: float, method: str, fallback_budget: int) -> TransferResult:
    eta = min(eta, 1.0)
    cert = certificate(graph, sep, gamma, eta, method, False)
    ok = check_split(graph, cert)
    if ok:
        return TransferResult(graph, cert, True)
    n = graph.n
    problems = []
    if not len(cert.separator) < separator_bound(n, gamma):
        problems.append(f"|S'| = {len(cert.separator)} is not < n^(1-gamma) = {separator_bound(n, gamma):.6g}")
    big = max(cert.component_sizes, default=0)
    if big > eta * n + ETA_TOL:
        problems.append(f"largest component {big} > eta n = {eta * n:.6g}")
    res = TransferResult(graph, cert, False, "invalid-at-this-n: " + "; ".join(problems))
    if fallback_budget > 0:
        res.fallback, res.fallback_exhaustive = find_split(graph, gamma, eta, fallback_budget)
    return res


def transfer_power(g: Graph, cert: SplitCertificate, k: int, fallback_budget: int = 0) -> TransferResult:
    """Certificate for G^k: remove every vertex within distance k of S; gamma halves."""
    sep = set(cert.separator)
    ball = set(sep)
    frontier = set(sep)
    for _ in range(k):
        frontier = {w for u in frontier for w in g.adj[u]} - ball
        ball |= frontier
    delta = g.max_degree()
    res = _finish(power(g, k), ball, cert.gamma / 2, cert.eta, f"transfer:power_{k}", fallback_budget)
    res.extras["ball_bound"] = len(sep) * sum(delta**i for i in range(k + 1))
    return res


def transfer_product(
    g1: Graph, cert1: SplitCertificate, g2: Graph, cert2: SplitCertificate, fallback_budget: int = 0
) -> TransferResult:
    """Certificate for G1 x G2: separator of the larger factor times the whole other factor."""
    prod = cartesian_product(g1, g2)
    m = g2.n
    if g1.n >= g2.n:
        sep = [a * m + b for a in cert1.separator for b in range(m)]
    else:
        sep = [a * m + b for a in range(g1.n) for b in cert2.separator]
    gamma = min(cert1.gamma, cert2.gamma) / 2
    eta = max(cert1.eta, cert2.eta)
    return _finish(prod, sep, gamma, eta, "transfer:product", fallback_budget)


def transfer_blowup(g: Graph, cert: SplitCertificate, blow: BlowUp, fallback_budget: int = 0) -> TransferResult:
    """Certificate for a clique blow-up: the preimage of S under the ancestor map.

    With cap K = max k_i the new parameters are gamma/2 and K eta; for K = 1
    the blow-up is the identity and the certificate is returned unchanged.
    """
    cap = max(blow.sizes, default=1)
    sep_old = set(cert.separator)
    sep = [x for x, a in enumerate(blow.ancestor) if a in sep_old]
    gamma = cert.gamma if cap == 1 else cert.gamma / 2
    return _finish(blow.graph, sep, gamma, cap * cert.eta, "transfer:blowup", fallback_budget)


def transfer_join(g: Graph, cert: SplitCertificate, l: int, fallback_budget: int = 0) -> TransferResult:
    """Certificate for K_l + G (apex vertices 0..l-1 first): add the apexes to S."""
    joined = join(complete_graph(l), g)
    sep = list(range(l)) + [v + l for v in cert.separator]
    eta = cert.eta * g.n / (g.n + l)
    return _finish(joined, sep, cert.gamma, eta, f"transfer:join_{l}", fallback_budget)


def transfer_split(kind: str, *args, **kwargs) -> TransferResult:
    """Dispatch on ``power_k`` / ``product`` / ``blowup`` / ``join_l``."""
    if kind.startswith("power"):
        return transfer_power(*args, **kwargs)
    if kind == "product":
        return transfer_product(*args, **kwargs)
    if kind == "blowup":
        return transfer_blowup(*args, **kwargs)
    if kind.startswith("join"):
        return transfer_join(*args, **kwargs)
    raise ValueError(f"unknown transfer kind {kind!r}")


# ---------------------------------------------------------------------------
# Crumbling probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeRow:
    n: int
    order: int
    found: bool
    separator_size: int | None
    method: str
    exhaustive: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "order": self.order,
            "found": self.found,
            "separator_size": self.separator_size,
            "method": self.method,
            "exhaustive": self.exhaustive,
        }


def _member(template: GraphSpec, n: int) -> GraphSpec:
    params = (n,) + tuple(template.params[1:])
    return replace(template, params=params)


def _structural_separator(spec: GraphSpec, g: Graph, gamma: float, eta: float):
    """Splitter suggested by the family's own structure, or None."""
    if spec.kind == "subdivided_complete":
        return "branch_vertices", list(range(spec.params[0]))
    if spec.kind in ("wheel", "book"):
        base = 1 if spec.kind == "wheel" else spec.params[0]
        rest = list(range(base, g.n))
        sub_sep = []
        if spec.kind == "wheel" and len(rest) >= 3:
            # a wheel minus its hub is a cycle; cut it into arcs
            arcs = max(1, math.ceil(1 / eta))
            step = max(1, len(rest) // arcs)
            sub_sep = rest[::step]
        return f"{spec.kind}_hub", list(range(base)) + sub_sep
    if spec.kind == "grid" and spec.params[1] >= 1:
        side, dims = spec.params
        path = path_graph(side)
        pc, _ = find_split(path, gamma, eta, budget=10_000)
        if pc is None:
            return None
        cur_g, cur_c = path, pc
        for _ in range(dims - 1):
            res = transfer_product(cur_g, cur_c, path, pc)
            cur_g, cur_c = res.graph, res.constructed
        return "transfer:product", list(cur_c.separator)
    return None


def probe_crumbling(
    template: GraphSpec, gamma: float, eta: float, n_values: Sequence[int], budget: int = 200_000
) -> list[ProbeRow]:
    """Per-n splittability report for one family.

    ``template`` fixes kind and extra parameters; its first parameter is
    replaced by each n. Trees go to the tree splitter, families with a known
    structural separator try it, and everything falls back to ``find_split``.
    """
    rows = []
    for n in n_values:
        spec = _member(template, n)
        g = generate(spec)
        attempts = []
        if is_tree(g) and g.n >= 2:
            k = max(1, math.ceil(math.log2(1 / eta))) if eta < 1 else 1
            attempts.append(("tree_split", tree_split(g, k)))
        structural = _structural_separator(spec, g, gamma, eta)
        if structural is not None:
            attempts.append(structural)
        found = None
        for method, sep in attempts:
            cert = certificate(g, sep, gamma, eta, method, False)
            if check_split(g, cert):
                found = cert
                break
        exhaustive = False
        if found is None:
            found, exhaustive = find_split(g, gamma, eta, budget)
        if found is None:
            rows.append(ProbeRow(n, g.n, False, None, "exhaustive" if exhaustive else "heuristic", exhaustive))
        else:
            rows.append(ProbeRow(n, g.n, True, len(found.separator), found.method, found.exhaustive))
    return rows
