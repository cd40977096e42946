from __future__ import annotations

from itertools import combinations

import networkx as nx
from hypothesis import strategies as st

from tollconvex.graph import Graph, from_edges, is_connected


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    """Random connected graph: a random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = list(combinations(range(n), 2))
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs)))
        edges.update(extra)
    G = from_edges(n, sorted(edges))
    assert is_connected(G)
    return G


def to_nx(G: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(G.n))
    out.add_edges_from(G.edges())
    return out


def subsets(n: int):
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)
