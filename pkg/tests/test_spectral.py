import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from goodlab.cli import petersen
from goodlab.errors import PreconditionError, ScaleError
from goodlab.graph import GraphSpec, disjoint_union, generate, make_graph
from goodlab.spectral import (
    DENSE_LIMIT,
    adjacency_matrix,
    bipartite_hole_max,
    expander_mixing_check,
    hole_lower,
    refutation_margin,
    refute_3_goodness,
    second_singular_value,
)

from conftest import graphs


def G(kind, *params, seed=None):
    return generate(GraphSpec(kind, params, seed=seed))


def test_sigma2_known_spectra():
    assert second_singular_value(petersen()) == pytest.approx(2, abs=1e-9)
    for n in range(2, 12):
        assert second_singular_value(G("complete", n)) == pytest.approx(1, abs=1e-9)
    assert second_singular_value(G("cycle", 4)) == pytest.approx(2, abs=1e-9)


def test_sparse_path_matches_dense():
    g = G("random_regular", DENSE_LIMIT + 100, 8, seed=2)
    ev = np.linalg.eigvalsh(adjacency_matrix(g))
    dense = float(np.sort(np.abs(ev))[-2])
    assert second_singular_value(g) == pytest.approx(dense, abs=1e-7)


def test_mixing_examples():
    assert expander_mixing_check(petersen()).max_violation <= 1e-9
    assert expander_mixing_check(G("cycle", 6)).max_violation <= 1e-9
    r = expander_mixing_check(G("complete", 4))
    assert r.pairs == 3**4 - 2 * 2**4 + 1
    assert r.max_violation <= 1e-9


def test_mixing_k4_pair_by_hand():
    # X = {0}, Y = {1}: |1 - 3/4| = 0.25 <= 1 * 1
    assert abs(1 - 3 / 4 * 1 * 1) - 1.0 < 0


def test_mixing_guards():
    with pytest.raises(PreconditionError):
        expander_mixing_check(G("path", 5))
    with pytest.raises(ScaleError):
        expander_mixing_check(G("cycle", 13))
    r = expander_mixing_check(G("cycle", 13), mode="sampled", samples=500, seed=3)
    assert r.mode == "sampled" and r.max_violation <= 1e-9


def test_hole_examples():
    assert bipartite_hole_max(G("complete", 6)).value == 0
    h = bipartite_hole_max(make_graph(6, []))
    assert h.value == 9
    two_triangles = disjoint_union(G("complete", 3), G("complete", 3))
    h = bipartite_hole_max(two_triangles)
    assert h.value == 9 and {tuple(h.X), tuple(h.Y)} == {(0, 1, 2), (3, 4, 5)}


@given(graphs(min_n=2, max_n=7))
def test_hole_matches_brute_force(g):
    best = 0
    for code in itertools.product(range(3), repeat=g.n):
        xs = [v for v in range(g.n) if code[v] == 1]
        ys = [v for v in range(g.n) if code[v] == 2]
        if xs and ys and not any(g.has_edge(x, y) for x in xs for y in ys):
            best = max(best, len(xs) * len(ys))
    h = bipartite_hole_max(g)
    assert h.value == best
    if best:
        assert not any(g.has_edge(x, y) for x in h.X for y in h.Y)


def test_hole_heuristic_is_valid():
    g = G("random_regular", 40, 3, seed=1)
    h = bipartite_hole_max(g, seed=2)
    assert h.method == "heuristic" and h.value == len(h.X) * len(h.Y)
    assert not any(g.has_edge(x, y) for x in h.X for y in h.Y)


def test_refute_petersen_inconclusive():
    r = refute_3_goodness(petersen())
    assert r.verdict == "inconclusive" and r.slack == "n^2/25 - 2n"


def test_refute_preconditions():
    with pytest.raises(PreconditionError):
        refute_3_goodness(G("path", 6))
    with pytest.raises(PreconditionError):
        refute_3_goodness(disjoint_union(G("cycle", 5), G("cycle", 5)))


def test_four_regular_is_inconclusive():
    # margin > 0 needs sigma2 < (4/n) sqrt(h) < 4/5. The other eigenvalues
    # have squares summing to 4n - 16, so sigma2^2 >= (4n - 16)/(n - 1) > 1
    # once n >= 6; for n <= 50 the hole bound is clipped to 0 anyway.
    for n in (10, 50, 200, 1000):
        g = G("random_regular", n, 4, seed=n)
        assert refute_3_goodness(g).verdict == "inconclusive"


@given(st.integers(3, 200), st.integers(10, 5000), st.floats(0, 50), st.floats(0, 50))
def test_verdict_monotone_in_sigma2(d, n, s1, s2):
    lo, hi = sorted((s1, s2))
    _, m_lo = refutation_margin(d, n, lo)
    _, m_hi = refutation_margin(d, n, hi)
    assert m_lo >= m_hi
    assert not (m_hi > 0 and m_lo <= 0)


def test_hole_lower():
    assert hole_lower(50) == 0
    assert hole_lower(2000) == 2000**2 / 25 - 4000
