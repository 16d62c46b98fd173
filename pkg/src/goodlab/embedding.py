"""Embedding sparse patterns into dense hosts.

* ``find_monomorphism``: plain backtracking subgraph search, the generic tool.
* ``greedy_embed_degenerate``: place a q-degenerate pattern vertex by vertex
  along its degeneracy order; each vertex has at most q placed neighbours, so
  its candidates are a common neighbourhood of at most q host vertices.
* ``embed_splittable``: trim a separator, put it in a near-clique core, then
  drop the remaining components one at a time into zones of the host.
* ``dense_core``: the high-degree vertex set of a dense graph.
* ``dependent_random_choice``: common neighbourhoods of a few vertices of U2
  inside U1 whose k-subsets all have many common neighbours.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from goodlab.degeneracy import degeneracy_order
from goodlab.errors import PreconditionError, ScaleError
from goodlab.graph import Graph, _bits, _mask, components, induced_subgraph

log = logging.getLogger(__name__)

DEFAULT_BACKTRACK_BUDGET = 1000


@dataclass(frozen=True)
class Embedding:
    pattern: Graph
    host: Graph
    map: tuple[int, ...]

    def to_json(self) -> dict:
        from goodlab.graph import encode_graph6

        return {
            "pattern_g6": encode_graph6(self.pattern).decode(),
            "host_g6": encode_graph6(self.host).decode(),
            "map": list(self.map),
        }


def verify_embedding(e: Embedding) -> bool:
    """Injective and edge-preserving; checked directly against the edge lists."""
    h, g, phi = e.pattern, e.host, e.map
    if len(phi) != h.n:
        return False
    if any(not 0 <= x < g.n for x in phi):
        return False
    if len(set(phi)) != len(phi):
        return False
    host_edges = set(g.edges)
    for u, v in h.edges:
        a, b = phi[u], phi[v]
        if (min(a, b), max(a, b)) not in host_edges:
            return False
    return True


def _search_order(h: Graph, start: Sequence[int]) -> list[int]:
    """Pattern vertices ordered so each one has as many earlier neighbours as possible."""
    order = list(start)
    placed = set(order)
    score = [0] * h.n
    for v in order:
        for w in h.adj[v]:
            score[w] += 1
    while len(order) < h.n:
        v = max((w for w in range(h.n) if w not in placed), key=lambda w: (score[w], h.degree(w), -w))
        order.append(v)
        placed.add(v)
        for w in h.adj[v]:
            score[w] += 1
    return order


def find_monomorphism(
    h: Graph,
    g: Graph,
    fixed: dict[int, int] | None = None,
    allowed: int | None = None,
    node_budget: int | None = None,
) -> tuple[int, ...] | None:
    """Injective edge-preserving map V(h) -> V(g), or None.

    ``fixed`` pins some pattern vertices; ``allowed`` restricts the images of
    the free ones to a host bitmask. With ``node_budget`` the search gives up
    (returns None) after that many placements.
    """
    fixed = dict(fixed or {})
    if h.n > g.n:
        return None
    for u, x in fixed.items():
        for w, y in fixed.items():
            if h.has_edge(u, w) and not g.has_edge(x, y):
                return None
    if len(set(fixed.values())) != len(fixed):
        return None
    full = (1 << g.n) - 1 if allowed is None else allowed
    order = _search_order(h, sorted(fixed))
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in h.adj[v] if pos[w] < pos[v]] for v in order]
    phi = [-1] * h.n
    used = 0
    for u, x in fixed.items():
        phi[u] = x
        used |= 1 << x
    nodes = 0
    k0 = len(fixed)

    def rec(k: int, used: int) -> bool:
        nonlocal nodes
        if k == h.n:
            return True
        v = order[k]
        cand = full & ~used
        for w in back[k]:
            cand &= g.masks[phi[w]]
        while cand:
            if node_budget is not None and nodes >= node_budget:
                return False
            low = cand & -cand
            cand ^= low
            nodes += 1
            phi[v] = low.bit_length() - 1
            if rec(k + 1, used | low):
                return True
        phi[v] = -1
        return False

    if rec(k0, used):
        return tuple(phi)
    return None


def greedy_embed_degenerate(
    h: Graph,
    g: Graph,
    backtrack_budget: int = DEFAULT_BACKTRACK_BUDGET,
    allowed: int | None = None,
) -> Embedding | None:
    """Embed h into g along h's degeneracy order, lowest free host vertex first.

    The first pass is the pure greedy; if a vertex runs out of candidates the
    search backtracks, revisiting at most ``backtrack_budget`` nodes in total.
    """
    if h.n > g.n:
        return None
    dord = degeneracy_order(h)
    order = dord.order
    back = dord.back_neighbors(h)
    full = ((1 << g.n) - 1) if allowed is None else allowed
    phi = [-1] * h.n
    revisits = 0

    def rec(k: int, used: int) -> bool:
        nonlocal revisits
        if k == h.n:
            return True
        v = order[k]
        cand = full & ~used
        for w in back[k]:
            cand &= g.masks[phi[w]]
        first = True
        while cand:
            if not first:
                revisits += 1
                if revisits > backtrack_budget:
                    return False
            first = False
            low = cand & -cand
            cand ^= low
            phi[v] = low.bit_length() - 1
            if rec(k + 1, used | low):
                return True
            if revisits > backtrack_budget:
                return False
        phi[v] = -1
        return False

    if rec(0, 0):
        return Embedding(h, g, tuple(phi))
    return None


@dataclass(frozen=True)
class DenseCore:
    vertices: tuple[int, ...]
    graph: Graph
    size_bound: float
    min_degree_bound: float

    @property
    def bounds_hold(self) -> bool:
        return len(self.vertices) > self.size_bound and self.graph.min_degree() > self.min_degree_bound


def dense_core(g: Graph, tau: float) -> DenseCore:
    """G[W] with W = {u : d(u) > (1 - sqrt(tau)) n}, for e(G) > (1 - tau) n^2 / 2."""
    if not 0 < tau < 1:
        raise PreconditionError("tau must lie in (0, 1)")
    n = g.n
    need = (1 - tau) * n * n / 2
    if not g.num_edges > need:
        raise PreconditionError(
            f"edge count {g.num_edges} does not exceed (1 - tau) n^2 / 2 = {need:.6g} (deficit {need - g.num_edges + 1:.6g})"
        )
    root = math.sqrt(tau)
    w = tuple(u for u in range(n) if g.degree(u) > (1 - root) * n)
    return DenseCore(w, induced_subgraph(g, w), (1 - root) * n, (1 - 2 * root) * n)


# ---------------------------------------------------------------------------
# Separator-first embedding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZonePlan:
    """Host-side layout: a core for the trimmed separator and zones for components.

    ``zone_min_degree[i]`` records the smallest number of neighbours a zone-i
    vertex has inside zone i, the per-zone guarantee the placement relies on.
    """

    core: tuple[int, ...]
    zones: tuple[tuple[int, ...], ...]
    capacity_margin: int = 0
    zone_min_degree: tuple[int, ...] = ()

    def __post_init__(self):
        seen = set(self.core)
        if len(seen) != len(self.core):
            raise ValueError("core has repeated vertices")
        for z in self.zones:
            if seen & set(z) or len(set(z)) != len(z):
                raise ValueError("core and zones must be pairwise disjoint")
            seen |= set(z)


def capacity_margin(q: int, zone_size: int, eps_zone: float = 0.01) -> int:
    return (6 * q + 1) * math.ceil(math.sqrt(eps_zone) * zone_size)


def make_zone_plan(
    host: Graph,
    core_size: int,
    n_zones: int = 1,
    margin: int | None = None,
    q: int = 1,
    eps_zone: float = 0.01,
) -> ZonePlan:
    """Core = the ``core_size`` highest-degree host vertices (lowest index on ties);
    the rest is dealt round-robin by degree into ``n_zones`` zones."""
    ranked = sorted(range(host.n), key=lambda v: (-host.degree(v), v))
    core = tuple(sorted(ranked[:core_size]))
    rest = ranked[core_size:]
    zones = tuple(tuple(sorted(rest[i::n_zones])) for i in range(n_zones)) if rest else ()
    if margin is None:
        margin = capacity_margin(q, max((len(z) for z in zones), default=0), eps_zone)
    zmin = []
    for z in zones:
        zm = _mask(z)
        zmin.append(min(((host.masks[v] & zm).bit_count() for v in z), default=0))
    return ZonePlan(core, zones, margin, tuple(zmin))


@dataclass
class PlacementStat:
    """One component-vertex placement: actual candidates vs the inclusion-exclusion floor."""

    vertex: int
    candidates: int
    lower_bound: int

    @property
    def slack(self) -> int:
        return self.candidates - self.lower_bound


@dataclass
class SplitEmbedResult:
    embedding: Embedding | None
    trimmed: tuple[int, ...]
    zone_of_component: list[int] = field(default_factory=list)
    stats: list[PlacementStat] = field(default_factory=list)
    failure: str | None = None


def embed_splittable(h: Graph, q: int, separator: Iterable[int], host: Graph, plan: ZonePlan) -> SplitEmbedResult:
    """Separator-first embedding of a q-degenerate splittable pattern.

    1. Trim the separator to M (every outside vertex then has at most 2q
       neighbours in M) and embed H[M] into the core.
    2. Take the components of H - M largest first; each goes to the first
       zone with at least |C| + margin free vertices.
    3. Inside the zone, place the component along its degeneracy order in the
       common host neighbourhood of its placed neighbours.

    A component that fails in its zone is retried in the later zones before
    the whole embedding is declared absent.
    """
    from goodlab.splitting import trim

    m_set = trim(h, separator, q, eta=None)
    m_list = sorted(m_set)
    if len(m_list) > len(plan.core):
        raise PreconditionError(f"plan core holds {len(plan.core)} vertices, trimmed separator needs {len(m_list)}")
    result = SplitEmbedResult(None, tuple(m_list))
    phi = [-1] * h.n
    used = 0
    if m_list:
        hm = induced_subgraph(h, m_list)
        core_emb = greedy_embed_degenerate(hm, host, allowed=_mask(plan.core))
        if core_emb is None:
            result.failure = "separator does not embed into the core"
            return result
        for i, v in enumerate(m_list):
            phi[v] = core_emb.map[i]
            used |= 1 << core_emb.map[i]

    comps = sorted(components(h, m_list), key=lambda c: (-len(c), c[0]))
    zone_masks = [_mask(z) for z in plan.zones]
    for comp in comps:
        placed = False
        for zi, zmask in enumerate(zone_masks):
            free = zmask & ~used
            if free.bit_count() < len(comp) + plan.capacity_margin:
                continue
            trial = _place_component(h, host, comp, phi, used, zmask)
            if trial is None:
                continue
            new_phi, used, stats = trial
            for v in comp:
                phi[v] = new_phi[v]
            result.zone_of_component.append(zi)
            result.stats.extend(stats)
            placed = True
            break
        if not placed:
            result.failure = f"no zone accepts the component of order {len(comp)} containing vertex {comp[0]}"
            return result
    result.embedding = Embedding(h, host, tuple(phi))
    return result


def _place_component(h: Graph, host: Graph, comp: list[int], phi: list[int], used: int, zmask: int):
    sub = induced_subgraph(h, comp)
    dord = degeneracy_order(sub)
    local = list(phi)
    zsize = zmask.bit_count()
    stats = []
    for i in dord.order:
        v = comp[i]
        anchors = [local[w] for w in h.adj[v] if local[w] >= 0]
        cand = zmask
        degree_sum = 0
        for a in anchors:
            cand &= host.masks[a]
            degree_sum += (host.masks[a] & zmask).bit_count()
        used_in_zone = (used & zmask).bit_count()
        floor = degree_sum - max(len(anchors) - 1, 0) * zsize - used_in_zone if anchors else zsize - used_in_zone
        cand &= ~used
        count = cand.bit_count()
        # the floor is a lower bound on count; a negative slack is a bug
        assert count >= floor, (count, floor)
        log.debug("place %d: %d candidates, floor %d", v, count, floor)
        if not cand:
            return None
        stats.append(PlacementStat(v, count, floor))
        x = (cand & -cand).bit_length() - 1
        local[v] = x
        used |= 1 << x
    return local, used, stats


# ---------------------------------------------------------------------------
# Dependent random choice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DRCResult:
    W: tuple[int, ...]
    a: float
    i: int
    tuple_: tuple[int, ...]
    threshold: float
    achieved: bool
    method: str

    def to_json(self) -> dict:
        return {
            "W": list(self.W),
            "a": self.a,
            "i": self.i,
            "tuple": list(self.tuple_),
            "threshold": self.threshold,
            "achieved": self.achieved,
            "method": self.method,
        }


def drc_parameters(n: int, k: int, d: float, lam: float) -> tuple[float, int]:
    """a = d^(2k/lambda + 1) and the least integer i with (a/d)^i n^k < 1.

    At d = 1 the ratio a/d is 1 and no such i exists; a single vertex then
    already has the whole of U1 as neighbourhood, so i = 1.
    """
    a = d ** (2 * k / lam + 1)
    ratio = a / d
    if ratio >= 1:
        return a, 1
    i = 0
    while ratio**i * n**k >= 1:
        i += 1
        if i > 10_000:
            raise ScaleError("tuple length i exceeds 10000")
    return a, i


def _bad_ksets(g: Graph, w: list[int], k: int, u2mask: int, limit: float) -> list[tuple[int, ...]]:
    bad = []
    for xs in itertools.combinations(w, k):
        common = u2mask
        for x in xs:
            common &= g.masks[x]
        if not common.bit_count() > limit:
            bad.append(xs)
    return bad


def dependent_random_choice(
    g: Graph,
    u1: Iterable[int],
    u2: Iterable[int],
    k: int,
    d: float,
    lam: float,
    i: int | None = None,
    budget: int = 200_000,
    samples: int = 2000,
    seed: int = 0,
) -> DRCResult:
    """Find W inside U1, the common neighbourhood of an i-tuple from U2, such
    that every k-subset of W has more than a|U2| common neighbours in U2.

    Exhaustive over i-multisets of U2 when |U2|^i <= budget (largest valid W,
    lexicographically least tuple on ties). Otherwise seeded sampling ranks
    tuples by X - d^i/(a^i n^(k-1)) Y - d^i n / 2, where X = |W| and Y counts
    bad k-sets; bad k-sets of the chosen W are then destroyed by deleting
    their largest vertex.
    """
    u1 = sorted(set(u1))
    u2 = sorted(set(u2))
    if set(u1) & set(u2):
        raise PreconditionError("U1 and U2 must be disjoint")
    if not u1 or not u2:
        raise PreconditionError("U1 and U2 must be nonempty")
    u1mask, u2mask = _mask(u1), _mask(u2)
    e12 = sum((g.masks[x] & u2mask).bit_count() for x in u1)
    if e12 < d * len(u1) * len(u2):
        raise PreconditionError(
            f"density too low: e(U1, U2) = {e12} < d |U1| |U2| = {d * len(u1) * len(u2):.6g}"
        )
    n = len(u1)
    a, i_proof = drc_parameters(n, k, d, lam)
    i = i_proof if i is None else i
    if i < 1:
        raise PreconditionError("tuple length i must be at least 1")
    limit = a * len(u2)
    if a >= 1:
        # d = 1: the strict bound is unattainable, ask for the full U2 instead
        limit = len(u2) - 0.5
    threshold = n ** (1 - lam)

    def w_of(tup) -> list[int]:
        m = u1mask
        for u in tup:
            m &= g.masks[u]
        return _bits(m)

    if len(u2) ** i <= budget:
        best_w, best_t = None, None
        for tup in itertools.combinations_with_replacement(u2, i):
            w = w_of(tup)
            if best_w is not None and len(w) <= len(best_w):
                continue
            if not _bad_ksets(g, w, k, u2mask, limit):
                best_w, best_t = w, tup
        if best_w is None:
            best_w, best_t = [], tuple(u2[:1]) * i
        return DRCResult(tuple(best_w), a, i, tuple(best_t), threshold, len(best_w) >= threshold, "exhaustive")

    rng = random.Random(seed)
    coef = d**i / (a**i * n ** (k - 1))
    best = None
    for _ in range(samples):
        tup = tuple(sorted(rng.choice(u2) for _ in range(i)))
        w = w_of(tup)
        bad = _bad_ksets(g, w, k, u2mask, limit)
        z = len(w) - coef * len(bad) - d**i * n / 2
        key = (z, [-t for t in tup])
        if best is None or key > best[0]:
            best = (key, tup, w, bad)
    _, tup, w, bad = best
    w_set = set(w)
    for xs in bad:
        if all(x in w_set for x in xs):
            w_set.discard(max(xs))
    w = sorted(w_set)
    return DRCResult(tuple(w), a, i, tup, threshold, len(w) >= threshold, "sampled")
