"""Toll and geodesic intervals, toll closure, t-convex hulls, extreme vertices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .graph import (
    Graph,
    GraphError,
    bits,
    distance_matrix,
    flood,
    reaches,
    require_connected,
    to_mask,
    to_set,
)

DEFAULT_ORACLE_CEILING = 8


# Separator-based toll interval --------------------------------------------


def _free_of(G: Graph, a: int, b: int) -> int:
    """Vertices x != a, b for which N[a] - {x} does not separate x from b.

    One flood finds the component R of b in G - N[a].  A vertex outside
    N[a] passes iff it lies in R; a neighbour x of a passes iff x has a
    neighbour in R, since every x,b-path avoiding N[a] - {x} leaves x
    straight into G - N[a].
    """
    closed = G.masks[a] | 1 << a
    region = flood(G.masks, 1 << b, G.all_mask & ~closed)
    out = region
    for x in bits(G.masks[a]):
        if G.masks[x] & region:
            out |= 1 << x
    return out & ~(1 << b)


def toll_interval_mask(G: Graph, u: int, v: int) -> int:
    if u == v:
        return 1 << u
    if G.has_edge(u, v):
        return 1 << u | 1 << v
    return _free_of(G, u, v) & _free_of(G, v, u) | 1 << u | 1 << v


def toll_interval_per_vertex_mask(G: Graph, u: int, v: int) -> int:
    """Same interval, testing both separators independently for every x."""
    if u == v:
        return 1 << u
    if G.has_edge(u, v):
        return 1 << u | 1 << v
    full = G.all_mask
    nu = G.masks[u] | 1 << u
    nv = G.masks[v] | 1 << v
    out = 1 << u | 1 << v
    for x in range(G.n):
        if x in (u, v):
            continue
        bx = 1 << x
        if reaches(G.masks, x, v, full & ~(nu & ~bx)) and reaches(G.masks, x, u, full & ~(nv & ~bx)):
            out |= bx
    return out


def _check_vertex(G: Graph, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} outside 0..{G.n - 1}")


def toll_interval(G: Graph, u: int, v: int) -> frozenset[int]:
    """T(u, v): all vertices on some tolled u,v-walk."""
    require_connected(G)
    _check_vertex(G, u, v)
    return to_set(interval_table(G)[u][v])


def interval_table(G: Graph) -> tuple[tuple[int, ...], ...]:
    """All toll intervals as bitsets, ``table[u][v]``; cached on the graph."""
    table = G._cache.get("toll")
    if table is None:
        require_connected(G)
        rows = [[0] * G.n for _ in range(G.n)]
        for u in range(G.n):
            rows[u][u] = 1 << u
            for v in range(u + 1, G.n):
                rows[u][v] = rows[v][u] = toll_interval_mask(G, u, v)
        table = tuple(tuple(r) for r in rows)
        G._cache["toll"] = table
    return table


# Oracle ------------------------------------------------------------------


def is_tolled_walk(G: Graph, walk: Sequence[int]) -> bool:
    """Check a vertex sequence against the tolled-walk definition literally."""
    if not walk:
        return False
    if len(walk) == 1:
        return True
    u, v = walk[0], walk[-1]
    if u == v:
        return False
    if any(not G.has_edge(a, b) for a, b in zip(walk, walk[1:])):
        return False
    if G.has_edge(u, v):
        return len(walk) == 2
    inner = walk[1:-1]
    k = len(inner)
    if k < 1:
        return False
    for i, w in enumerate(inner, start=1):
        if G.has_edge(u, w) != (i == 1):
            return False
        if G.has_edge(v, w) != (i == k):
            return False
    return True


def _walk_search(G: Graph, u: int, v: int):
    """Forward and backward BFS over walk states (vertex, is_first_inner).

    A state may be extended to (w', False) when w is not adjacent to v
    (w is not the last inner vertex) and w' is not adjacent to u (w' is
    not the first).  A state ends the walk at v when w is adjacent to v.
    """
    n = G.n
    adj = G.adj
    nu = G.masks[u]
    nv = G.masks[v]
    size = 2 * n
    fwd = [-1] * size
    fpar = [-1] * size
    queue = deque()
    for w in adj[u]:
        s = 2 * w + 1
        fwd[s] = 1
        queue.append(s)
    while queue:
        s = queue.popleft()
        w = s >> 1
        if nv >> w & 1:
            continue
        for w2 in adj[w]:
            if nu >> w2 & 1:
                continue
            t = 2 * w2
            if fwd[t] < 0:
                fwd[t] = fwd[s] + 1
                fpar[t] = s
                queue.append(t)
    bwd = [-1] * size
    bpar = [-1] * size
    for w in adj[v]:
        for s in (2 * w, 2 * w + 1):
            bwd[s] = 1
            queue.append(s)
    while queue:
        t = queue.popleft()
        if t & 1:
            continue
        w2 = t >> 1
        if nu >> w2 & 1:
            continue
        for w in adj[w2]:
            if nv >> w & 1:
                continue
            for s in (2 * w, 2 * w + 1):
                if bwd[s] < 0:
                    bwd[s] = bwd[t] + 1
                    bpar[s] = t
                    queue.append(s)
    return fwd, fpar, bwd, bpar


def _require_oracle_size(G: Graph, max_n: int) -> None:
    if G.n > max_n:
        raise GraphError(f"oracle ceiling is {max_n} vertices, graph has {G.n}")


def toll_interval_oracle(
    G: Graph, u: int, v: int, max_n: int = DEFAULT_ORACLE_CEILING
) -> frozenset[int]:
    """Toll interval by explicit search over walks of length at most 2n - 2.

    Independent of the separator characterisation: it follows the walk
    definition step by step.
    """
    require_connected(G)
    _check_vertex(G, u, v)
    _require_oracle_size(G, max_n)
    if u == v:
        return frozenset({u})
    if G.has_edge(u, v):
        return frozenset({u, v})
    fwd, _, bwd, _ = _walk_search(G, u, v)
    bound = 2 * G.n - 2
    out = {u, v}
    for s in range(2 * G.n):
        if fwd[s] > 0 and bwd[s] > 0 and fwd[s] + bwd[s] <= bound:
            out.add(s >> 1)
    return frozenset(out)


def tolled_walk_witness(
    G: Graph, u: int, v: int, x: int, max_n: int = DEFAULT_ORACLE_CEILING
) -> list[int] | None:
    """A shortest tolled u,v-walk through ``x``, or ``None`` if there is none."""
    require_connected(G)
    _check_vertex(G, u, v, x)
    _require_oracle_size(G, max_n)
    if u == v:
        return [u] if x == u else None
    if G.has_edge(u, v):
        return [u, v] if x in (u, v) else None
    fwd, fpar, bwd, bpar = _walk_search(G, u, v)
    best = None
    for s in (2 * x, 2 * x + 1):
        if fwd[s] > 0 and bwd[s] > 0:
            if best is None or fwd[s] + bwd[s] < fwd[best] + bwd[best]:
                best = s
    if x in (u, v):
        # any tolled walk will do; take the shortest overall
        for s in range(2 * G.n):
            if fwd[s] > 0 and bwd[s] > 0 and (best is None or fwd[s] + bwd[s] < fwd[best] + bwd[best]):
                best = s
    if best is None or fwd[best] + bwd[best] > 2 * G.n - 2:
        return None
    head = []
    s = best
    while s >= 0:
        head.append(s >> 1)
        s = fpar[s]
    tail = []
    s = bpar[best]
    while s >= 0:
        tail.append(s >> 1)
        s = bpar[s]
    return [u, *reversed(head), *tail, v]


# Closure, hull, convexity ---------------------------------------------------


def closure_mask(G: Graph, mask: int) -> int:
    table = interval_table(G)
    members = list(bits(mask))
    out = mask
    for i, a in enumerate(members):
        row = table[a]
        for b in members[i + 1:]:
            out |= row[b]
    return out


def toll_closure(G: Graph, S: Iterable[int]) -> frozenset[int]:
    """T[S]: union of toll intervals over all pairs of S."""
    require_connected(G)
    S = frozenset(S)
    _check_vertex(G, *S)
    return to_set(closure_mask(G, to_mask(S)))


@dataclass(frozen=True)
class HullTrace:
    """Iterated toll closures ``S, T(S), T^2(S), ...`` up to the fixpoint."""

    stages: tuple[frozenset[int], ...]

    @property
    def fixed(self) -> frozenset[int]:
        return self.stages[-1]


def hull_mask(G: Graph, mask: int) -> int:
    while True:
        nxt = closure_mask(G, mask)
        if nxt == mask:
            return mask
        mask = nxt


def t_convex_hull(G: Graph, S: Iterable[int]) -> HullTrace:
    require_connected(G)
    S = frozenset(S)
    _check_vertex(G, *S)
    mask = to_mask(S)
    stages = [mask]
    while True:
        nxt = closure_mask(G, mask)
        if nxt == mask:
            break
        stages.append(nxt)
        mask = nxt
    return HullTrace(tuple(to_set(m) for m in stages))


def is_t_convex(
    G: Graph, Y: Iterable[int], method: Literal["closure", "separator"] = "closure"
) -> bool:
    require_connected(G)
    Y = frozenset(Y)
    _check_vertex(G, *Y)
    y_mask = to_mask(Y)
    if method == "closure":
        return closure_mask(G, y_mask) == y_mask
    if method != "separator":
        raise GraphError(f"unknown convexity method {method!r}")
    # equal or adjacent pairs have intervals inside Y already
    full = G.all_mask
    outside = list(bits(full & ~y_mask))
    members = sorted(Y)
    for i, x in enumerate(members):
        nx = G.masks[x] | 1 << x
        for y in members[i + 1:]:
            if G.has_edge(x, y):
                continue
            ny = G.masks[y] | 1 << y
            for v in outside:
                bv = 1 << v
                cut_x = not reaches(G.masks, v, y, full & ~(nx & ~bv))
                if not cut_x and reaches(G.masks, v, x, full & ~(ny & ~bv)):
                    return False
    return True


def extreme_mask(G: Graph) -> int:
    cached = G._cache.get("ext")
    if cached is None:
        table = interval_table(G)
        interior = 0
        for u in range(G.n):
            for v in range(u + 1, G.n):
                interior |= table[u][v] & ~(1 << u | 1 << v)
        cached = G.all_mask & ~interior
        G._cache["ext"] = cached
    return cached


def extreme_vertices(G: Graph) -> frozenset[int]:
    """Vertices s with V(G) - {s} t-convex."""
    require_connected(G)
    return to_set(extreme_mask(G))


# Geodesic machinery ------------------------------------------------------


def geodesic_interval_mask(G: Graph, u: int, v: int) -> int:
    dist = distance_matrix(G)
    du, dv = dist[u], dist[v]
    d = du[v]
    out = 0
    for x in range(G.n):
        if du[x] + dv[x] == d:
            out |= 1 << x
    return out


def geodesic_interval(G: Graph, u: int, v: int) -> frozenset[int]:
    """I(u, v): vertices on shortest u,v-paths."""
    require_connected(G)
    _check_vertex(G, u, v)
    return to_set(geodesic_interval_mask(G, u, v))


def geodesic_table(G: Graph) -> tuple[tuple[int, ...], ...]:
    table = G._cache.get("geo")
    if table is None:
        require_connected(G)
        table = tuple(
            tuple(geodesic_interval_mask(G, u, v) for v in range(G.n)) for u in range(G.n)
        )
        G._cache["geo"] = table
    return table
