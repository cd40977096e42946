"""Toll convexity in graphs and in Cartesian and lexicographic products."""

from __future__ import annotations

from .convexity import (
    HullTrace,
    extreme_vertices,
    geodesic_interval,
    is_t_convex,
    is_tolled_walk,
    t_convex_hull,
    toll_closure,
    toll_interval,
    toll_interval_oracle,
    tolled_walk_witness,
)
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    ProductGraph,
    cartesian_product,
    cut_vertices,
    enumerate_connected_graphs,
    from_edges,
    lexicographic_product,
    named_graph,
    non_cut_non_adjacent_pair,
    product,
    separates,
    vertex_classes,
)
from .invariants import (
    CeilingExceeded,
    InvariantResult,
    geodetic_number,
    is_2_packing,
    is_extreme_complete,
    is_geodetic_set,
    is_t_hull_set,
    is_toll_set,
    t_hull_number,
    toll_number,
)
from .io import ParseError, parse_edgelist, parse_graph6, to_edgelist, to_graph6
from .products import (
    CharacterizationVerdict,
    TollNumberBounds,
    TollTriple,
    brute_lex_toll_number,
    cartesian_tconvex_characterization,
    cartesian_toll_pair,
    lex_3tn_conditions,
    lex_tn2_characterization,
    lex_toll_interval,
    lex_toll_number,
    min_toll_dominating_cost,
    toll_dominating_valid,
)
from .report import VerificationReport
from .suites import SUITES, run_suite

_SUBMODULES = {"convexity", "graph", "invariants", "io", "products", "report", "suites"}
__all__ = sorted(n for n in dir() if not n.startswith("_") and n not in _SUBMODULES | {"annotations"})
