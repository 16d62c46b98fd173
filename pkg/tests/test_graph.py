import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from goodlab.errors import Graph6Error, GraphError, InfeasibleError
from goodlab.graph import (
    GraphSpec,
    blowup,
    cartesian_product,
    complement,
    components,
    decode_graph6,
    disjoint_union,
    encode_graph6,
    from_edge_list,
    generate,
    induced_subgraph,
    is_tree,
    join,
    make_graph,
    power,
    to_dot,
    to_edge_list,
)

from conftest import bfs_all_pairs, graphs, naive_components, random_graph


def test_make_graph_rejects_loops_and_range():
    with pytest.raises(GraphError):
        make_graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        make_graph(3, [(0, 3)])


def test_duplicate_edges_collapse():
    g = make_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.num_edges == 1


@pytest.mark.parametrize(
    "kind,params,n,e",
    [
        ("path", (5,), 5, 4),
        ("cycle", (6,), 6, 6),
        ("complete", (5,), 5, 10),
        ("complete_multipartite", (2, 2, 2), 6, 12),
        ("book", (2, 3), 5, 7),
        ("wheel", (5,), 6, 10),
        ("star", (4,), 5, 4),
        ("subdivided_complete", (4,), 10, 12),
        ("grid", (3, 2), 9, 12),
    ],
)
def test_named_families(kind, params, n, e):
    g = generate(GraphSpec(kind, params))
    assert (g.n, g.num_edges) == (n, e)


def test_book_vertex_order():
    g = generate(GraphSpec("book", (2, 3)))
    assert g.has_edge(0, 1)
    assert all(g.has_edge(0, v) and g.has_edge(1, v) for v in (2, 3, 4))
    assert not g.has_edge(2, 3)


def test_subdivided_complete_order():
    g = generate(GraphSpec("subdivided_complete", (4,)))
    # branch vertices 0..3, then one vertex per pair in lexicographic order
    for idx, (a, b) in enumerate(itertools.combinations(range(4), 2)):
        assert sorted(g.adj[4 + idx]) == [a, b]


def test_random_kinds_are_seeded():
    a = generate(GraphSpec("random_tree", (40,), seed=7))
    b = generate(GraphSpec("random_tree", (40,), seed=7))
    c = generate(GraphSpec("random_tree", (40,), seed=8))
    assert a == b and a != c
    assert is_tree(a)


@pytest.mark.parametrize("n,d", [(10, 3), (12, 4), (50, 7), (200, 20), (31, 30)])
def test_random_regular_is_regular_and_simple(n, d):
    for seed in range(3):
        g = generate(GraphSpec("random_regular", (n, d), seed=seed))
        assert all(x == d for x in g.degrees())
        assert g.num_edges == n * d // 2


def test_random_regular_infeasible():
    with pytest.raises(InfeasibleError):
        generate(GraphSpec("random_regular", (7, 3)))
    with pytest.raises(InfeasibleError):
        generate(GraphSpec("random_regular", (5, 5)))


@given(graphs(max_n=7), graphs(max_n=7))
def test_join_counts(g, h):
    j = join(g, h)
    assert j.n == g.n + h.n
    assert j.num_edges == g.num_edges + h.num_edges + g.n * h.n


def test_disjoint_union():
    g = disjoint_union(generate(GraphSpec("complete", (3,))), generate(GraphSpec("complete", (3,))))
    assert len(components(g)) == 2 and g.num_edges == 6


@given(graphs(max_n=9), st.integers(1, 4))
def test_power_matches_bfs_oracle(g, k):
    dist = bfs_all_pairs(g)
    expect = {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if dist[u][v] <= k}
    assert set(power(g, k).edges) == expect


@given(graphs(min_n=1, max_n=6), st.data())
def test_blowup_preserves_adjacency(g, data):
    sizes = data.draw(st.lists(st.integers(1, 3), min_size=g.n, max_size=g.n))
    b = blowup(g, sizes)
    assert b.graph.n == sum(sizes)
    for x, y in itertools.combinations(range(b.graph.n), 2):
        ax, ay = b.ancestor[x], b.ancestor[y]
        if ax == ay:
            assert b.graph.has_edge(x, y)
        else:
            assert b.graph.has_edge(x, y) == g.has_edge(ax, ay)


def test_blowup_rejects_bad_sizes():
    g = generate(GraphSpec("path", (3,)))
    with pytest.raises(GraphError):
        blowup(g, [1, 0, 1])
    with pytest.raises(GraphError):
        blowup(g, [1, 1])


def test_cartesian_product_of_paths_is_grid():
    p = generate(GraphSpec("path", (4,)))
    g = cartesian_product(p, p)
    ref = nx.grid_2d_graph(4, 4)
    assert nx.is_isomorphic(nx.Graph(list(g.edges)), ref)


@given(graphs(max_n=9))
def test_components_agree_with_oracle(g):
    ours = sorted(map(sorted, components(g)))
    ref = sorted(map(sorted, naive_components(g)))
    assert ours == ref


@given(graphs(max_n=8))
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert complement(g).num_edges + g.num_edges == g.n * (g.n - 1) // 2


def test_induced_subgraph_relabels():
    g = generate(GraphSpec("cycle", (5,)))
    h = induced_subgraph(g, [0, 1, 2])
    assert h.edges == ((0, 1), (1, 2))


# graph6


def test_graph6_small_cases():
    assert encode_graph6(make_graph(1, [])) == b"@"
    assert decode_graph6(encode_graph6(generate(GraphSpec("path", (3,))))) == generate(GraphSpec("path", (3,)))


def test_graph6_rejects_garbage():
    with pytest.raises(Graph6Error) as exc:
        decode_graph6(b"garbage\xff")
    assert "offset" in str(exc.value)
    with pytest.raises(Graph6Error):
        decode_graph6("D?")  # n=5 needs two data bytes
    with pytest.raises(Graph6Error):
        decode_graph6("")


def test_graph6_header_accepted():
    assert decode_graph6(">>graph6<<Bw").num_edges == 3


def test_graph6_matches_networkx():
    rng = random.Random(11)
    for n in list(range(0, 70, 3)) + [62, 63, 64, 69]:
        g = random_graph(rng, n)
        ref = nx.Graph()
        ref.add_nodes_from(range(n))
        ref.add_edges_from(g.edges)
        assert encode_graph6(g) == nx.to_graph6_bytes(ref, header=False).strip()


def test_graph6_round_trip_1000():
    rng = random.Random(5)
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 30))
        assert decode_graph6(encode_graph6(g)) == g


def test_graph6_large_n_header():
    g = make_graph(100, [(0, 99), (5, 6)])
    assert decode_graph6(encode_graph6(g)) == g


def test_edge_list_round_trip_and_dot():
    g = generate(GraphSpec("wheel", (5,)))
    assert from_edge_list(to_edge_list(g)) == g
    dot = to_dot(g)
    assert dot.startswith("graph") and dot.count("--") == g.num_edges
