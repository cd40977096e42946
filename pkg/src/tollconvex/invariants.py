"""Toll number, t-hull number, geodetic number and related set predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .convexity import (
    closure_mask,
    extreme_mask,
    geodesic_table,
    hull_mask,
    interval_table,
)
from .graph import (
    Graph,
    GraphError,
    bits,
    enumerate_connected_graphs,
    popcount,
    require_connected,
    to_mask,
    to_set,
    vertex_classes,
)

DEFAULT_SEARCH_CEILING = 12


class CeilingExceeded(GraphError):
    """The exact search refuses graphs above its vertex ceiling."""


@dataclass(frozen=True)
class InvariantResult:
    value: int
    witnesses: list[frozenset[int]] = field(default_factory=list)
    # True when ``witnesses`` lists every minimum set
    exhaustive: bool = True

    def __int__(self) -> int:
        return self.value


def _check_ceiling(G: Graph, max_n: int) -> None:
    if G.n > max_n:
        raise CeilingExceeded(f"exact search ceiling is {max_n} vertices, graph has {G.n}")


def _closure_combos(
    table: tuple[tuple[int, ...], ...], forced: list[int], cands: list[int], r: int, full: int
) -> Iterator[int]:
    """Masks forced + C (|C| = r, C from ``cands`` in lexicographic order)
    whose one-step closure under ``table`` is ``full``."""
    base = 0
    for i, a in enumerate(forced):
        base |= 1 << a
        for b in forced[i + 1:]:
            base |= table[a][b]

    def rec(start: int, chosen: list[int], cur: int, left: int) -> Iterator[int]:
        if left == 0:
            if cur == full:
                yield to_mask(chosen)
            return
        for i in range(start, len(cands) - left + 1):
            x = cands[i]
            row = table[x]
            nxt = cur | 1 << x
            for y in chosen:
                nxt |= row[y]
            chosen.append(x)
            yield from rec(i + 1, chosen, nxt, left - 1)
            chosen.pop()

    yield from rec(0, list(forced), base, r)


def _minimum_search(
    G: Graph,
    forced_mask: int,
    sets_of_size: Callable[[list[int], list[int], int], Iterator[int]],
    lower: int,
    max_witnesses: int | None,
) -> InvariantResult:
    forced = list(bits(forced_mask))
    cands = [v for v in range(G.n) if not forced_mask >> v & 1]
    for size in range(max(lower, len(forced)), G.n + 1):
        found = []
        for m in sets_of_size(forced, cands, size - len(forced)):
            found.append(to_set(m))
            if max_witnesses is not None and len(found) >= max_witnesses:
                return InvariantResult(size, found, exhaustive=False)
        if found:
            return InvariantResult(size, found, exhaustive=True)
    raise AssertionError("the whole vertex set always qualifies")


def _trivial(G: Graph) -> InvariantResult | None:
    if G.n == 1:
        return InvariantResult(1, [frozenset({0})])
    return None


def toll_number(
    G: Graph,
    max_n: int = DEFAULT_SEARCH_CEILING,
    max_witnesses: int | None = None,
    use_extreme_pruning: bool = True,
) -> InvariantResult:
    """Minimum size of a set whose toll closure is V(G).

    Candidates always contain Ext(G) (when pruning is on); sizes ascend
    from max(|Ext(G)|, 2).  With ``max_witnesses=None`` every minimum toll
    set is returned.
    """
    require_connected(G)
    _check_ceiling(G, max_n)
    trivial = _trivial(G)
    if trivial:
        return trivial
    table = interval_table(G)
    full = G.all_mask
    forced = extreme_mask(G) if use_extreme_pruning else 0
    return _minimum_search(
        G,
        forced,
        lambda f, c, r: _closure_combos(table, f, c, r, full),
        2,
        max_witnesses,
    )


def t_hull_number(
    G: Graph,
    max_n: int = DEFAULT_SEARCH_CEILING,
    max_witnesses: int | None = None,
    use_extreme_pruning: bool = True,
) -> InvariantResult:
    """Minimum size of a set whose t-convex hull is V(G)."""
    require_connected(G)
    _check_ceiling(G, max_n)
    trivial = _trivial(G)
    if trivial:
        return trivial
    interval_table(G)
    full = G.all_mask

    def sets_of_size(forced: list[int], cands: list[int], r: int) -> Iterator[int]:
        base = to_mask(forced)
        for combo in combinations(cands, r):
            m = base | to_mask(combo)
            if hull_mask(G, m) == full:
                yield m

    forced = extreme_mask(G) if use_extreme_pruning else 0
    return _minimum_search(G, forced, sets_of_size, 2, max_witnesses)


def geodetic_number(
    G: Graph, max_n: int = DEFAULT_SEARCH_CEILING, max_witnesses: int | None = None
) -> InvariantResult:
    """Minimum size of a set whose geodetic closure is V(G).

    Simplicial vertices are never inner vertices of shortest paths, so
    every geodetic set contains them; the search forces them in.
    """
    require_connected(G)
    _check_ceiling(G, max_n)
    trivial = _trivial(G)
    if trivial:
        return trivial
    table = geodesic_table(G)
    simplicial, _ = vertex_classes(G)
    return _minimum_search(
        G,
        to_mask(simplicial),
        lambda f, c, r: _closure_combos(table, f, c, r, G.all_mask),
        2,
        max_witnesses,
    )


def is_toll_set(G: Graph, S: Iterable[int]) -> bool:
    require_connected(G)
    return closure_mask(G, to_mask(S)) == G.all_mask


def is_t_hull_set(G: Graph, S: Iterable[int]) -> bool:
    require_connected(G)
    interval_table(G)
    return hull_mask(G, to_mask(S)) == G.all_mask


def is_geodetic_set(G: Graph, S: Iterable[int]) -> bool:
    require_connected(G)
    table = geodesic_table(G)
    members = sorted(set(S))
    out = to_mask(members)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            out |= table[a][b]
    return out == G.all_mask


def is_2_packing(G: Graph, S: Iterable[int]) -> bool:
    """Closed neighbourhoods of distinct members are pairwise disjoint."""
    seen = 0
    for v in set(S):
        closed = G.closed_mask(v)
        if seen & closed:
            return False
        seen |= closed
    return True


def has_disjoint_open_neighborhoods(G: Graph, S: Iterable[int]) -> bool:
    """Open neighbourhoods of distinct members are pairwise disjoint."""
    seen = 0
    for v in set(S):
        if seen & G.masks[v]:
            return False
        seen |= G.masks[v]
    return True


def is_extreme_complete(G: Graph, max_n: int = DEFAULT_SEARCH_CEILING) -> bool:
    return popcount(extreme_mask(G)) == toll_number(G, max_n, max_witnesses=1).value


def find_graph_with_one_extreme(max_n: int) -> Graph | None:
    """Search connected graphs on 2..max_n vertices for |Ext(G)| = 1."""
    for n in range(2, max_n + 1):
        for G in enumerate_connected_graphs(n, ceiling=max(max_n, 7)):
            if popcount(extreme_mask(G)) == 1:
                return G
    return None
