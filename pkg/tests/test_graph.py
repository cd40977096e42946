from __future__ import annotations

import pickle

import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import connected_graphs, to_nx
from tollconvex.graph import (
    FIG3_GPRIME_LABELS,
    DisconnectedGraphError,
    Graph,
    GraphError,
    cartesian_product,
    complete_graph,
    cut_vertices,
    cycle_graph,
    distance_matrix,
    enumerate_connected_graphs,
    fig3_gprime,
    fig3_spider,
    from_edges,
    is_connected,
    lexicographic_product,
    named_graph,
    non_cut_non_adjacent_pair,
    path_graph,
    product,
    require_connected,
    separates,
    star_graph,
    vertex_classes,
)

P4 = path_graph(4)
C5 = cycle_graph(5)
K13 = star_graph(3)


def test_from_edges_examples():
    assert from_edges(2, [(0, 1)]) == complete_graph(2)
    assert from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]) == C5
    G = from_edges(4, [(0, 1), (1, 0), (1, 2), (2, 3)])
    assert G == P4 and G.m == 3


@pytest.mark.parametrize("n, edges", [(3, [(0, 3)]), (3, [(1, 1)]), (-1, []), (2, [(-1, 0)])])
def test_from_edges_rejects(n, edges):
    with pytest.raises(GraphError):
        from_edges(n, edges)


def test_graph_constructor_validates_symmetry():
    with pytest.raises(GraphError):
        Graph(2, [0b10, 0])
    with pytest.raises(GraphError):
        Graph(1, [0b1])


def test_connectivity_examples():
    assert is_connected(C5)
    assert not is_connected(from_edges(2, []))
    assert is_connected(P4)
    with pytest.raises(DisconnectedGraphError):
        require_connected(from_edges(3, [(0, 1)]))


def test_separates_examples():
    assert separates(P4, {1}, 0, 3)
    assert not separates(C5, {1}, 0, 3)
    assert not separates(C5, {0, 1, 4}, 3, 2)
    with pytest.raises(GraphError):
        separates(P4, {0}, 0, 3)


def test_cut_vertices_examples():
    assert cut_vertices(P4) == {1, 2}
    assert cut_vertices(C5) == frozenset()
    assert cut_vertices(fig3_spider()) == {1, 2, 3, 5}


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=7))
def test_cut_vertices_match_networkx_and_separators(G):
    assert cut_vertices(G) == set(nx.articulation_points(to_nx(G)))
    for v in G.vertices:
        others = [x for x in G.vertices if x != v]
        split = any(separates(G, {v}, s, t) for s in others for t in others if s < t)
        assert split == (v in cut_vertices(G))


def test_non_cut_non_adjacent_pair_examples():
    assert non_cut_non_adjacent_pair(C5) == (0, 2)
    assert non_cut_non_adjacent_pair(P4) == (0, 3)
    with pytest.raises(GraphError):
        non_cut_non_adjacent_pair(complete_graph(4))


def test_vertex_classes_examples():
    assert vertex_classes(K13) == ({1, 2, 3}, {0})
    assert vertex_classes(C5) == (frozenset(), frozenset())
    assert vertex_classes(P4) == ({0, 3}, frozenset())


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=7))
def test_distance_matrix_matches_networkx(G):
    lengths = dict(nx.all_pairs_shortest_path_length(to_nx(G)))
    D = distance_matrix(G)
    assert all(D[u][v] == lengths[u][v] for u in G.vertices for v in G.vertices)


def test_product_examples():
    K2 = complete_graph(2)
    assert nx.is_isomorphic(to_nx(product(K2, K2, "cartesian").graph), to_nx(cycle_graph(4)))
    assert product(K2, K2, "lexicographic").graph == complete_graph(4)
    grid = cartesian_product(P4, P4)
    assert nx.is_isomorphic(to_nx(grid.graph), nx.grid_2d_graph(4, 4))
    with pytest.raises(GraphError):
        product(K2, K2, "strong")


@pytest.mark.parametrize("kind", ["cartesian", "lexicographic"])
@pytest.mark.parametrize("G, H", [(P4, K13), (C5, path_graph(3)), (K13, cycle_graph(4))])
def test_product_layers_and_encoding(kind, G, H):
    p = product(G, H, kind)
    assert p.graph.n == G.n * H.n
    for g in G.vertices:
        for h in H.vertices:
            assert p.decode(p.encode(g, h)) == (g, h)
    for h in H.vertices:
        layer = sorted(p.g_layer(h))
        assert p.graph.induced(layer) == G
    for g in G.vertices:
        layer = sorted(p.h_layer(g))
        assert p.graph.induced(layer) == H


def test_products_match_networkx():
    G, H = P4, K13
    expected = nx.cartesian_product(to_nx(G), to_nx(H))
    p = cartesian_product(G, H)
    assert {tuple(sorted((p.decode(u), p.decode(v)))) for u, v in p.graph.edges()} == {
        tuple(sorted(e)) for e in expected.edges()
    }
    expected = nx.lexicographic_product(to_nx(G), to_nx(H))
    p = lexicographic_product(G, H)
    assert {tuple(sorted((p.decode(u), p.decode(v)))) for u, v in p.graph.edges()} == {
        tuple(sorted(e)) for e in expected.edges()
    }


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
def test_enumeration_counts(n, count):
    graphs = list(enumerate_connected_graphs(n))
    assert len(graphs) == count
    assert len(set(graphs)) == count
    assert all(is_connected(G) for G in graphs)


def test_enumeration_ranges_partition():
    whole = list(enumerate_connected_graphs(5))
    parts = [G for lo in range(0, 1024, 100) for G in enumerate_connected_graphs(5, start=lo, stop=lo + 100)]
    assert parts == whole


def test_enumeration_ceiling():
    with pytest.raises(GraphError):
        next(enumerate_connected_graphs(8))


def test_named_graphs():
    assert named_graph("cycle", 5) == C5
    assert named_graph("star", 3) == K13
    spider = named_graph("fig3-spider")
    assert spider.n == 7 and spider.m == 6 and is_connected(spider)
    gp = fig3_gprime()
    assert gp.n == len(FIG3_GPRIME_LABELS) == 8 and gp.m == 12
    for bad in [("cycle", 2), ("wheel", 5), ("fig3-spider", 1), ("path",)]:
        with pytest.raises(GraphError):
            named_graph(*bad)


def test_pickle_round_trip():
    G = fig3_gprime()
    distance_matrix(G)
    H = pickle.loads(pickle.dumps(G))
    assert H == G and hash(H) == hash(G)
    assert H._cache == {}
