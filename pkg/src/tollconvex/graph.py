"""Finite simple graphs on dense vertex indices, products and enumeration.

Vertices are the integers ``0..n-1``.  Public functions take and return
``frozenset`` vertex sets; the hot loops work on Python ints used as
bitsets (bit ``i`` set means vertex ``i`` is a member).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Literal

VertexSet = frozenset

DEFAULT_ENUMERATION_CEILING = 7


class GraphError(ValueError):
    """Raised for malformed graphs or violated preconditions."""


class DisconnectedGraphError(GraphError):
    pass


# Bitset helpers ----------------------------------------------------------


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def flood(adj: tuple[int, ...], seeds: int, allowed: int) -> int:
    """Vertices reachable from ``seeds`` moving only through ``allowed``.

    Seeds are always part of the result even when outside ``allowed``.
    """
    seen = seeds
    frontier = seeds
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def reaches(adj: tuple[int, ...], s: int, t: int, allowed: int) -> bool:
    """True when ``t`` is reachable from ``s`` inside ``allowed`` (early exit)."""
    target = 1 << t
    seen = 1 << s
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        if nxt & target & allowed:
            return True
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return False


# Graph -------------------------------------------------------------------


class Graph:
    """Immutable simple undirected graph.

    ``adj[v]`` is the frozenset of neighbours of ``v``; ``masks[v]`` is the
    same neighbourhood as a bitset.  Instances are hashable and compare by
    labelled edge set, so derived tables can be cached per graph.
    """

    __slots__ = ("n", "masks", "_adj", "_cache")

    def __init__(self, n: int, masks: Iterable[int]):
        masks = tuple(masks)
        if len(masks) != n:
            raise GraphError(f"expected {n} adjacency masks, got {len(masks)}")
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full:
                raise GraphError(f"vertex {v} has a neighbour index >= n={n}")
            if m >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for w in bits(m):
                if not masks[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
        self.n = n
        self.masks = masks
        self._adj = None
        self._cache: dict = {}

    @classmethod
    def _trusted(cls, n: int, masks: tuple[int, ...]) -> "Graph":
        """Skip validation; for internal generators that build valid masks."""
        G = cls.__new__(cls)
        G.n = n
        G.masks = masks
        G._adj = None
        G._cache = {}
        return G

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        if self._adj is None:
            self._adj = tuple(to_set(m) for m in self.masks)
        return self._adj

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.masks[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(popcount(x) for x in self.masks) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def closed_mask(self, v: int) -> int:
        return self.masks[v] | 1 << v

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def is_complete(self) -> bool:
        return all(popcount(m) == self.n - 1 for m in self.masks)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled in increasing vertex order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return from_edges(
            len(keep),
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def __reduce__(self):
        return (Graph._trusted, (self.n, self.masks))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices; duplicate pairs collapse."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    masks = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {tuple(pair)} has an index outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge {tuple(pair)} is a self-loop")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, masks)


def require_connected(G: Graph) -> None:
    if not is_connected(G):
        raise DisconnectedGraphError("graph is not connected")


def is_connected(G: Graph) -> bool:
    if G.n < 1:
        raise GraphError("connectivity is undefined for the empty graph")
    return flood(G.masks, 1, G.all_mask) == G.all_mask


def separates(G: Graph, removed: Iterable[int], s: int, t: int) -> bool:
    """True iff every s,t-path meets ``removed``."""
    rm = to_mask(removed)
    if rm >> s & 1 or rm >> t & 1:
        raise GraphError(f"endpoints {s}, {t} must lie outside the removed set")
    if s == t:
        raise GraphError("endpoints must be distinct")
    return not reaches(G.masks, s, t, G.all_mask & ~rm)


def cut_vertices(G: Graph) -> frozenset[int]:
    require_connected(G)
    full = G.all_mask
    out = []
    for v in range(G.n):
        rest = full & ~(1 << v)
        start = rest & -rest
        if flood(G.masks, start, rest) != rest:
            out.append(v)
    return frozenset(out)


def distances(G: Graph, source: int) -> list[int]:
    """BFS distances from ``source``; -1 marks unreachable vertices."""
    dist = [-1] * G.n
    dist[source] = 0
    seen = frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= G.masks[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
        for v in bits(frontier):
            dist[v] = d
    return dist


def distance_matrix(G: Graph) -> tuple[tuple[int, ...], ...]:
    cached = G._cache.get("dist")
    if cached is None:
        cached = tuple(tuple(distances(G, v)) for v in range(G.n))
        G._cache["dist"] = cached
    return cached


def non_cut_non_adjacent_pair(G: Graph) -> tuple[int, int]:
    """Lexicographically least diametral pair; both ends are non-cut vertices.

    Raises ``GraphError`` for complete graphs.
    """
    require_connected(G)
    if G.is_complete():
        raise GraphError("complete graph has no non-adjacent pair")
    dist = distance_matrix(G)
    diam = max(max(row) for row in dist)
    u, v = next((u, v) for u, v in combinations(range(G.n), 2) if dist[u][v] == diam)
    cuts = cut_vertices(G)
    if u in cuts or v in cuts or G.has_edge(u, v):
        raise AssertionError(f"diametral pair {(u, v)} is not a non-cut, non-adjacent pair")
    return u, v


def vertex_classes(G: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """Return ``(simplicial, universal)`` vertex sets."""
    simplicial = []
    universal = []
    for v in range(G.n):
        closed = G.closed_mask(v)
        if all(G.closed_mask(w) & closed == closed for w in bits(G.masks[v])):
            simplicial.append(v)
        if closed == G.all_mask:
            universal.append(v)
    return frozenset(simplicial), frozenset(universal)


# Products ----------------------------------------------------------------

ProductKind = Literal["cartesian", "lexicographic"]


@dataclass(frozen=True)
class ProductGraph:
    """A product graph together with its factor coordinates.

    Vertex ``(g, h)`` is stored at index ``g * n_H + h``.
    """

    graph: Graph
    factors: tuple[int, int]
    kind: ProductKind

    def encode(self, g: int, h: int) -> int:
        n_g, n_h = self.factors
        if not (0 <= g < n_g and 0 <= h < n_h):
            raise GraphError(f"pair {(g, h)} outside factor ranges {self.factors}")
        return g * n_h + h

    def decode(self, v: int) -> tuple[int, int]:
        return divmod(v, self.factors[1])

    def p_g(self, v: int) -> int:
        return v // self.factors[1]

    def p_h(self, v: int) -> int:
        return v % self.factors[1]

    def g_layer(self, h: int) -> frozenset[int]:
        """The layer ``V(G) x {h}``."""
        return frozenset(self.encode(g, h) for g in range(self.factors[0]))

    def h_layer(self, g: int) -> frozenset[int]:
        """The layer ``{g} x V(H)``."""
        return frozenset(self.encode(g, h) for h in range(self.factors[1]))

    def box(self, g_set: Iterable[int], h_set: Iterable[int]) -> frozenset[int]:
        h_list = list(h_set)
        return frozenset(self.encode(g, h) for g in g_set for h in h_list)


def product(G: Graph, H: Graph, kind: ProductKind) -> ProductGraph:
    if G.n < 1 or H.n < 1:
        raise GraphError("product factors need at least one vertex")
    if kind not in ("cartesian", "lexicographic"):
        raise GraphError(f"unknown product kind {kind!r}")
    n_h = H.n
    layer = (1 << n_h) - 1
    masks = []
    for g in range(G.n):
        for h in range(n_h):
            within = H.masks[h] << (g * n_h)
            across = 0
            for g2 in bits(G.masks[g]):
                across |= (1 << h if kind == "cartesian" else layer) << (g2 * n_h)
            masks.append(within | across)
    return ProductGraph(Graph(G.n * n_h, masks), (G.n, n_h), kind)


def cartesian_product(G: Graph, H: Graph) -> ProductGraph:
    return product(G, H, "cartesian")


def lexicographic_product(G: Graph, H: Graph) -> ProductGraph:
    return product(G, H, "lexicographic")


# Enumeration ---------------------------------------------------------------


def enumerate_connected_graphs(
    n: int,
    ceiling: int = DEFAULT_ENUMERATION_CEILING,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[Graph]:
    """All connected labelled graphs on ``n`` vertices, by ascending edge mask.

    Edge bit ``k`` corresponds to the ``k``-th pair of
    ``itertools.combinations(range(n), 2)``.  ``start``/``stop`` restrict the
    mask range so workers can partition the stream by index.
    """
    if not 1 <= n <= ceiling:
        raise GraphError(f"enumeration supports 1 <= n <= {ceiling}, got {n}")
    pairs = list(combinations(range(n), 2))
    total = 1 << len(pairs)
    stop = total if stop is None else min(stop, total)
    full = (1 << n) - 1
    # adjacency = low-half table entry OR high-half table entry
    low_bits = len(pairs) // 2
    low_tab = _adjacency_table(n, pairs[:low_bits])
    high_tab = _adjacency_table(n, pairs[low_bits:])
    low_mask = (1 << low_bits) - 1
    for mask in range(start, stop):
        lo = low_tab[mask & low_mask]
        hi = high_tab[mask >> low_bits]
        adj = tuple([a | b for a, b in zip(lo, hi)])
        if flood(adj, 1, full) == full:
            yield Graph._trusted(n, adj)


def _adjacency_table(n: int, pairs: list[tuple[int, int]]) -> list[tuple[int, ...]]:
    table = [tuple([0] * n)]
    for u, v in pairs:
        grown = []
        for adj in table:
            a = list(adj)
            a[u] |= 1 << v
            a[v] |= 1 << u
            grown.append(tuple(a))
        table += grown
    return table


def edge_mask_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def connected_graphs_up_to(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_connected_graphs(n, ceiling=max(max_n, DEFAULT_ENUMERATION_CEILING))


# Named families ------------------------------------------------------------

FIG3_GPRIME_LABELS = ("b0", "b1", "b2", "t0", "t1", "t2", "l", "r")
_FIG3_GPRIME_EDGES = [
    ("b0", "b1"), ("b1", "b2"), ("t0", "t1"), ("t1", "t2"),
    ("b0", "l"), ("l", "t0"), ("b2", "r"), ("r", "t2"),
    ("l", "b2"), ("t0", "b1"), ("t0", "r"), ("t1", "b2"),
]


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs at least 1 vertex, got {n}")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle length must be at least 3, got {n}")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs at least 1 vertex, got {n}")
    return from_edges(n, combinations(range(n), 2))


def star_graph(m: int) -> Graph:
    """K_{1,m}: centre 0, leaves 1..m."""
    if m < 1:
        raise GraphError(f"star needs at least one leaf, got {m}")
    return from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def fig3_spider() -> Graph:
    """Path 0-1-2-3-4 with the pendant path 2-5-6."""
    return from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)])


def fig3_gprime() -> Graph:
    """The 8-vertex, 12-edge graph; vertex order is ``FIG3_GPRIME_LABELS``."""
    index = {name: i for i, name in enumerate(FIG3_GPRIME_LABELS)}
    return from_edges(8, [(index[a], index[b]) for a, b in _FIG3_GPRIME_EDGES])


_FAMILIES = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
}


def named_graph(name: str, *params: int) -> Graph:
    """Construct a named family member, e.g. ``named_graph("cycle", 5)``."""
    if name == "fig3-spider":
        if params:
            raise GraphError("fig3-spider takes no parameters")
        return fig3_spider()
    if name == "fig3-gprime":
        if params:
            raise GraphError("fig3-gprime takes no parameters")
        return fig3_gprime()
    try:
        build = _FAMILIES[name]
    except KeyError:
        known = sorted([*_FAMILIES, "fig3-spider", "fig3-gprime"])
        raise GraphError(f"unknown graph family {name!r}; known: {', '.join(known)}") from None
    if len(params) != 1:
        raise GraphError(f"{name} takes exactly one integer parameter")
    return build(int(params[0]))
