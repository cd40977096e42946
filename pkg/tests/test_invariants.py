from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings

from helpers import connected_graphs
from tollconvex.convexity import extreme_vertices
from tollconvex.graph import (
    DisconnectedGraphError,
    complete_graph,
    connected_graphs_up_to,
    cycle_graph,
    fig3_gprime,
    fig3_spider,
    from_edges,
    path_graph,
    star_graph,
)
from tollconvex.invariants import (
    CeilingExceeded,
    InvariantResult,
    geodetic_number,
    has_disjoint_open_neighborhoods,
    is_2_packing,
    is_extreme_complete,
    is_geodetic_set,
    is_t_hull_set,
    is_toll_set,
    t_hull_number,
    toll_number,
)

C5 = cycle_graph(5)
P4 = path_graph(4)


def _brute_minimum(G, predicate):
    for k in range(1, G.n + 1):
        sets = [frozenset(S) for S in combinations(G.vertices, k) if predicate(G, S)]
        if sets:
            return k, sets
    raise AssertionError


def test_toll_set_examples():
    assert is_toll_set(C5, range(5))
    assert is_toll_set(C5, {0, 2})
    assert not is_toll_set(complete_graph(3), {0, 1})


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graphs(n):
    K = complete_graph(n)
    assert toll_number(K).value == n
    assert t_hull_number(K).value == n
    assert geodetic_number(K).value == n
    assert is_extreme_complete(K)


def test_point_values():
    res = toll_number(C5)
    assert res.value == 2 and res.exhaustive
    assert all(is_toll_set(C5, S) for S in res.witnesses)
    assert t_hull_number(C5).value == 2
    assert geodetic_number(complete_graph(3)).value == 3
    assert geodetic_number(cycle_graph(4)).value == 2
    assert geodetic_number(C5).value == 3
    assert toll_number(fig3_spider()).value == 2
    assert toll_number(fig3_gprime()).value == 2
    assert extreme_vertices(fig3_gprime()) == frozenset()


@pytest.mark.parametrize("m", range(4, 11))
def test_cycles_have_toll_number_two(m):
    assert toll_number(cycle_graph(m), max_witnesses=1).value == 2


def test_k1_convention():
    K1 = complete_graph(1)
    for fn in (toll_number, t_hull_number, geodetic_number):
        assert fn(K1).value == 1


def test_result_is_int_like():
    assert int(InvariantResult(3, [frozenset({0, 1, 2})])) == 3


def test_ceiling_and_connectivity_guards():
    with pytest.raises(CeilingExceeded):
        toll_number(path_graph(13))
    assert toll_number(path_graph(13), max_n=13, max_witnesses=1).value == 2
    with pytest.raises(DisconnectedGraphError):
        toll_number(from_edges(3, [(0, 1)]))


def test_witness_limit():
    res = toll_number(C5, max_witnesses=1)
    assert len(res.witnesses) == 1 and not res.exhaustive
    assert len(toll_number(C5).witnesses) == 5


@pytest.mark.parametrize("n", range(1, 6))
def test_searches_match_brute_force(n):
    for G in connected_graphs_up_to(n, min_n=n):
        for fn, pred in ((toll_number, is_toll_set), (t_hull_number, is_t_hull_set), (geodetic_number, is_geodetic_set)):
            k, sets = _brute_minimum(G, pred)
            res = fn(G)
            assert res.value == k
            assert sorted(map(sorted, res.witnesses)) == sorted(map(sorted, sets))


@pytest.mark.parametrize("n", range(2, 7))
def test_pruning_does_not_change_results(n):
    for G in connected_graphs_up_to(n, min_n=n):
        pruned = toll_number(G)
        plain = toll_number(G, use_extreme_pruning=False)
        assert pruned.value == plain.value
        assert pruned.witnesses == plain.witnesses
        assert t_hull_number(G).value == t_hull_number(G, use_extreme_pruning=False).value


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=8))
def test_inequality_chain(G):
    ext = extreme_vertices(G)
    tn = toll_number(G)
    th = t_hull_number(G)
    assert len(ext) <= th.value <= tn.value <= geodetic_number(G, max_witnesses=1).value
    for S in tn.witnesses + th.witnesses:
        assert ext <= S
    assert all(is_toll_set(G, S) for S in tn.witnesses)
    assert all(is_t_hull_set(G, S) for S in th.witnesses)


def test_packing_examples():
    P5 = path_graph(5)
    assert is_2_packing(P5, {0, 4})
    assert is_2_packing(P4, {0, 3})
    assert not is_2_packing(C5, {0, 2})
    # open neighbourhoods of adjacent vertices can be disjoint
    assert has_disjoint_open_neighborhoods(P4, {1, 2})
    assert not is_2_packing(P4, {1, 2})
    assert not has_disjoint_open_neighborhoods(C5, {0, 2})
    assert has_disjoint_open_neighborhoods(path_graph(2), {0, 1})
    assert not is_2_packing(path_graph(2), {0, 1})
    assert has_disjoint_open_neighborhoods(star_graph(3), {1})
