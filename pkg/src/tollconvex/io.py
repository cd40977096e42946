"""Edgelist and graph6 reading and writing."""

from __future__ import annotations

from .graph import Graph, GraphError, from_edges

GRAPH6_MAX_N = 62


class ParseError(GraphError):
    """Malformed graph text; the message names the offending line or byte."""


def parse_edgelist(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-based).

    Blank lines and ``#`` comments are ignored; extra whitespace is fine.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split("#", 1)[0].split()
        if fields:
            rows.append((lineno, fields))
    if not rows:
        raise ParseError("empty edge list: expected header 'n m'")
    lineno, header = rows[0]
    try:
        if len(header) != 2:
            raise ValueError
        n, m = int(header[0]), int(header[1])
        if n < 1 or m < 0:
            raise ValueError
    except ValueError:
        raise ParseError(f"line {lineno}: malformed header {' '.join(header)!r}, expected 'n m'") from None
    body = rows[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise ParseError(f"line {where}: header declares {m} edges, found {len(body)}")
    edges = []
    for lineno, fields in body:
        try:
            if len(fields) != 2:
                raise ValueError
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed edge {' '.join(fields)!r}, expected 'u v'") from None
        for x in (u, v):
            if not 0 <= x < n:
                raise ParseError(f"line {lineno}: index {x} out of range for n={n}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {u}")
        edges.append((u, v))
    return from_edges(n, edges)


def to_edgelist(G: Graph) -> str:
    """Canonical edge list: header then edges sorted, smaller endpoint first."""
    edges = G.edges()
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    """Decode a single-byte-size graph6 string (n <= 62)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"graph6 byte {i} ({ch!r}) outside 63..126")
    if s[0] == "~":
        raise ParseError("extended graph6 size headers (n > 62) are not supported")
    n = ord(s[0]) - 63
    if n < 1:
        raise ParseError("graph6 graph must have at least one vertex")
    pairs = n * (n - 1) // 2
    need = -(-pairs // 6)
    if len(s) - 1 != need:
        raise ParseError(f"graph6 length mismatch: n={n} needs {need} data bytes, got {len(s) - 1}")
    data = 0
    for ch in s[1:]:
        data = data << 6 | (ord(ch) - 63)
    total = 6 * need
    edges = []
    k = 0
    # upper triangle column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            if data >> (total - 1 - k) & 1:
                edges.append((i, j))
            k += 1
    if data & ((1 << (total - pairs)) - 1):
        raise ParseError("graph6 padding bits must be zero")
    return from_edges(n, edges)


def to_graph6(G: Graph) -> str:
    if G.n > GRAPH6_MAX_N:
        raise GraphError(f"graph6 output supports n <= {GRAPH6_MAX_N}, got {G.n}")
    bitlist = [int(G.has_edge(i, j)) for j in range(1, G.n) for i in range(j)]
    bitlist += [0] * (-len(bitlist) % 6)
    out = [chr(G.n + 63)]
    for k in range(0, len(bitlist), 6):
        val = 0
        for b in bitlist[k:k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph(text: str, fmt: str = "edgelist") -> Graph:
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ParseError(f"unknown format {fmt!r}; use edgelist or graph6")


def serialize_graph(G: Graph, fmt: str = "edgelist") -> str:
    if fmt == "edgelist":
        return to_edgelist(G)
    if fmt == "graph6":
        return to_graph6(G) + "\n"
    raise ParseError(f"unknown format {fmt!r}; use edgelist or graph6")


def sniff_format(text: str) -> str:
    """Guess the format: a single token without spaces is graph6."""
    stripped = text.strip()
    if stripped.startswith(">>graph6<<") or (stripped and len(stripped.split()) == 1 and not stripped.isdigit()):
        return "graph6"
    return "edgelist"

