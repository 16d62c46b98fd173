"""Second singular value, the expander mixing inequality, bipartite holes, and
the spectral test that a regular graph cannot sit inside the blue graph of
the pentagon colouring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from goodlab.errors import PreconditionError, ScaleError
from goodlab.graph import Graph, _bits, is_connected

DENSE_LIMIT = 500
EIG_TOL = 1e-9
EXHAUSTIVE_MIXING_LIMIT = 12
EXHAUSTIVE_HOLE_LIMIT = 16


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def second_singular_value(g: Graph) -> float:
    """Second largest |eigenvalue| of the adjacency matrix.

    Dense symmetric eigensolver up to ``DENSE_LIMIT`` vertices, Lanczos
    (ARPACK) on the sparse matrix above it.
    """
    if g.n < 2:
        return 0.0
    if g.n <= DENSE_LIMIT:
        ev = np.linalg.eigvalsh(adjacency_matrix(g))
        return float(np.sort(np.abs(ev))[-2])
    rows = [u for u, v in g.edges] + [v for u, v in g.edges]
    cols = [v for u, v in g.edges] + [u for u, v in g.edges]
    a = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    v0 = np.random.default_rng(0).standard_normal(g.n)
    ev = spla.eigsh(a, k=3, which="LM", tol=EIG_TOL, v0=v0, ncv=min(g.n, 60), return_eigenvectors=False)
    return float(np.sort(np.abs(ev))[-2])


@dataclass(frozen=True)
class MixingReport:
    d: int
    n: int
    sigma2: float
    max_violation: float
    X: tuple[int, ...]
    Y: tuple[int, ...]
    pairs: int
    mode: str

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "sigma2": self.sigma2,
            "max_violation": self.max_violation,
            "X": list(self.X),
            "Y": list(self.Y),
            "pairs": self.pairs,
            "method": self.mode,
        }


def _require_regular(g: Graph) -> int:
    if g.n == 0 or not g.is_regular():
        raise PreconditionError("graph is not regular")
    return g.degree(0)


def expander_mixing_check(g: Graph, mode: str = "exhaustive", seed: int = 0, samples: int = 100_000) -> MixingReport:
    """max over disjoint nonempty X, Y of |e(X,Y) - d|X||Y|/n| - sigma2 sqrt(|X||Y|).

    Exhaustive mode walks all 3^n assignments of vertices to X, Y or
    neither (n <= 12). The inequality is a theorem, so a positive maximum
    beyond rounding means a bug upstream.
    """
    d = _require_regular(g)
    n = g.n
    sigma2 = second_singular_value(g)
    a = adjacency_matrix(g)
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MIXING_LIMIT:
            raise ScaleError(f"exhaustive mixing check limited to n <= {EXHAUSTIVE_MIXING_LIMIT}")
        codes = np.array(np.unravel_index(np.arange(3**n), (3,) * n)).T.astype(np.int8)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        codes = rng.integers(0, 3, size=(samples, n), dtype=np.int8)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    xs = (codes == 1).astype(float)
    ys = (codes == 2).astype(float)
    sx, sy = xs.sum(1), ys.sum(1)
    ok = (sx > 0) & (sy > 0)
    xs, ys, sx, sy = xs[ok], ys[ok], sx[ok], sy[ok]
    exy = ((xs @ a) * ys).sum(1)
    viol = np.abs(exy - d / n * sx * sy) - sigma2 * np.sqrt(sx * sy)
    j = int(np.argmax(viol))
    return MixingReport(
        d,
        n,
        sigma2,
        float(viol[j]),
        tuple(int(i) for i in np.flatnonzero(xs[j])),
        tuple(int(i) for i in np.flatnonzero(ys[j])),
        int(ok.sum()),
        mode,
    )


@dataclass(frozen=True)
class HoleResult:
    value: int
    X: tuple[int, ...]
    Y: tuple[int, ...]
    method: str

    def to_json(self) -> dict:
        return {"value": self.value, "X": list(self.X), "Y": list(self.Y), "method": self.method}


def bipartite_hole_max(g: Graph, seed: int = 0, restarts: int = 50) -> HoleResult:
    """Largest |X||Y| over disjoint nonempty X, Y with no edge between them.

    For fixed X the best Y is everything outside X and its neighbourhood, so
    the exhaustive mode (n <= 16) only enumerates X. Larger graphs get a
    seeded greedy local search, whose value is a lower bound.
    """
    n = g.n
    full = (1 << n) - 1
    best = (0, 0, 0)
    if n <= EXHAUSTIVE_HOLE_LIMIT:
        for x in range(1, full + 1):
            nb = 0
            for v in _bits(x):
                nb |= g.masks[v]
            y = full & ~x & ~nb
            val = x.bit_count() * y.bit_count()
            if val > best[0]:
                best = (val, x, y)
        return HoleResult(best[0], tuple(_bits(best[1])), tuple(_bits(best[2])), "exhaustive")
    rng = random.Random(seed)
    for _ in range(restarts):
        x = 1 << rng.randrange(n)
        nb = g.masks[x.bit_length() - 1]
        while True:
            y = full & ~x & ~nb
            cur = x.bit_count() * y.bit_count()
            step = None
            for v in _bits(y):
                nx, nnb = x | (1 << v), nb | g.masks[v]
                val = nx.bit_count() * (full & ~nx & ~nnb).bit_count()
                if val > cur and (step is None or val > step[0]):
                    step = (val, nx, nnb)
            if step is None:
                break
            _, x, nb = step
        y = full & ~x & ~nb
        val = x.bit_count() * y.bit_count()
        if val > best[0]:
            best = (val, x, y)
    return HoleResult(best[0], tuple(_bits(best[1])), tuple(_bits(best[2])), "heuristic")


HOLE_SLACK = "n^2/25 - 2n"


def hole_lower(n: int) -> float:
    """Guaranteed bipartite-hole product inside any n-vertex blue subgraph of the pentagon colouring."""
    return n * n / 25 - 2 * n


@dataclass(frozen=True)
class RefutationReport:
    d: int
    n: int
    sigma2: float
    hole_lower: float
    verdict: str
    margin: float
    slack: str = HOLE_SLACK

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "sigma2": self.sigma2,
            "hole_lower": self.hole_lower,
            "slack": self.slack,
            "verdict": self.verdict,
            "margin": self.margin,
        }


def refutation_margin(d: int, n: int, sigma2: float) -> tuple[float, float]:
    """(hole_lower, margin) with margin = (d/n) h - sigma2 sqrt(h), h clipped at 0."""
    h = hole_lower(n)
    hc = max(h, 0.0)
    return h, d / n * hc - sigma2 * math.sqrt(hc)


def refute_3_goodness(g: Graph, sigma2: float | None = None) -> RefutationReport:
    """Refuted when the mixing inequality forbids the bipartite hole every
    n-vertex blue subgraph of the pentagon colouring of K_{2n-1} contains,
    i.e. g does not embed in that blue graph, so r(K3, g) > 2n - 1."""
    d = _require_regular(g)
    if not is_connected(g):
        raise PreconditionError("graph is not connected")
    if sigma2 is None:
        sigma2 = second_singular_value(g)
    h, margin = refutation_margin(d, g.n, sigma2)
    return RefutationReport(d, g.n, sigma2, h, "refuted" if margin > 0 else "inconclusive", margin)
