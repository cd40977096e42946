"""Exhaustive verification campaigns over small graphs.

Every suite returns a :class:`VerificationReport`.  Work is split into
deterministically ordered chunks; with ``jobs > 1`` the chunks run in a
process pool and are merged in their original order, so the report does
not depend on the worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from .convexity import (
    extreme_mask,
    interval_table,
    is_t_convex,
    toll_interval_mask,
    toll_interval_oracle,
)
from .graph import (
    Graph,
    GraphError,
    bits,
    cartesian_product,
    complete_graph,
    cycle_graph,
    edge_mask_count,
    enumerate_connected_graphs,
    fig3_spider,
    from_edges,
    is_connected,
    lexicographic_product,
    non_cut_non_adjacent_pair,
    path_graph,
    popcount,
    star_graph,
    to_mask,
    to_set,
    vertex_classes,
)
from .invariants import (
    geodetic_number,
    has_disjoint_open_neighborhoods,
    is_2_packing,
    t_hull_number,
    toll_number,
)
from .products import (
    _characterize,
    cartesian_tconvex_characterization,
    lex_3tn_conditions,
    lex_hull_bounds_check,
    lex_tn2_characterization,
    lex_toll_number,
    lemma012_check,
    path_star_claim,
    verify_cartesian_tn2,
    verify_lex_interval_formula,
)
from .report import VerificationReport, Violation

PRODUCT_CEILING = 40
RANDOM_SEED = 20240600
RANDOM_SAMPLES = 200

FACTORS: dict[str, Callable[[], Graph]] = {
    "K2": lambda: complete_graph(2),
    "K3": lambda: complete_graph(3),
    "P3": lambda: path_graph(3),
    "P4": lambda: path_graph(4),
    "C4": lambda: cycle_graph(4),
    "C5": lambda: cycle_graph(5),
    "K13": lambda: star_graph(3),
}

DEFAULT_H = ("P3", "P4", "C4", "K13")
LEX_EXACT_H = DEFAULT_H + ("C5",)


@dataclass(frozen=True)
class SuiteSpec:
    run: Callable[["SuiteLimits"], VerificationReport]
    default_max_n: int
    ceiling: int
    default_h: tuple[str, ...] = ()


@dataclass(frozen=True)
class SuiteLimits:
    max_n: int
    h_family: tuple[str, ...] = ()
    jobs: int = 1


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _merge(suite: str, parts: list[VerificationReport]) -> VerificationReport:
    out = VerificationReport(suite)
    for part in parts:
        out.merge(part)
    return out


def _graphs(min_n: int, max_n: int) -> list[Graph]:
    return [G for n in range(min_n, max_n + 1) for G in enumerate_connected_graphs(n, ceiling=max(7, max_n))]


def _tag(G: Graph) -> str:
    return f"n={G.n} E={G.edges()}"


def _mask_chunks(n: int, jobs: int) -> list[tuple[int, int, int]]:
    total = edge_mask_count(n)
    parts = max(1, min(total, 8 * jobs if jobs > 1 else 1))
    step = -(-total // parts)
    return [(n, lo, min(total, lo + step)) for lo in range(0, total, step)]


def _run_batches(report: VerificationReport, n: int, jobs: int, worker: Callable, label: str = "graphs") -> int:
    """Run ``worker((n, lo, hi))`` over edge-mask ranges and add one record for n."""
    results = _pmap(worker, _mask_chunks(n, jobs), jobs)
    count = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    _batch_record(report, f"n={n} ({count} {label})", count, failures)
    return count


def _batch_record(report: VerificationReport, instance: str, count: int, failures: list) -> None:
    """One record for a whole batch; every graph counts as an instance and
    every failing graph becomes its own violation."""
    report.check(instance, 0, len(failures), [f[0] for f in failures[:5]])
    report.instances += max(count, 1) - 1
    report.violations.extend(Violation(*f) for f in failures[1:])


# interval-oracle -----------------------------------------------------------


def _oracle_failures(G: Graph) -> list:
    bad = []
    for u in range(G.n):
        for v in range(u, G.n):
            fast = to_set(toll_interval_mask(G, u, v))
            slow = toll_interval_oracle(G, u, v, max_n=max(8, G.n))
            if fast != slow:
                bad.append((f"{_tag(G)} pair=({u},{v})", sorted(slow), sorted(fast)))
    return bad


def _oracle_chunk(args: tuple[int, int, int]):
    n, lo, hi = args
    count = 0
    bad = []
    for G in enumerate_connected_graphs(n, start=lo, stop=hi):
        count += 1
        bad.extend(_oracle_failures(G))
    return count, bad


def random_connected_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    while True:
        G = from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])
        if is_connected(G):
            return G


def _suite_interval_oracle(limits: SuiteLimits) -> VerificationReport:
    report = VerificationReport("interval-oracle")
    for n in range(1, limits.max_n + 1):
        _run_batches(report, n, limits.jobs, _oracle_chunk)
    for n in (7, 8):
        if n <= limits.max_n:
            continue
        rng = random.Random(RANDOM_SEED + n)
        graphs = [random_connected_graph(n, rng) for _ in range(RANDOM_SAMPLES)]
        bad = [f for G in graphs for f in _oracle_failures(G)]
        report.check(f"random n={n} ({RANDOM_SAMPLES} graphs, seed {RANDOM_SEED + n})", 0, len(bad), bad[:5])
    return report


# inequality-chain ----------------------------------------------------------


def _chain_chunk(args: tuple[int, int, int]):
    n, lo, hi = args
    count = 0
    bad = []
    for G in enumerate_connected_graphs(n, start=lo, stop=hi):
        count += 1
        ext = extreme_mask(G)
        # unpruned search, so containment of Ext in minimum sets is a real check
        tn = toll_number(G, use_extreme_pruning=False)
        th = t_hull_number(G, max_witnesses=1)
        g = geodetic_number(G, max_witnesses=1).value
        e = popcount(ext)
        if not e <= th.value <= tn.value <= g:
            bad.append((_tag(G), "ext<=th<=tn<=g", [e, th.value, tn.value, g]))
        if any(to_mask(S) & ext != ext for S in tn.witnesses):
            bad.append((_tag(G), "Ext in every minimum set", sorted(bits(ext))))
    return count, bad


def _suite_inequality_chain(limits: SuiteLimits) -> VerificationReport:
    report = VerificationReport("inequality-chain")
    for n in range(1, limits.max_n + 1):
        _run_batches(report, n, limits.jobs, _chain_chunk)
    flags = [n for n in range(1, min(limits.max_n, 6) + 1)
             if popcount(extreme_mask(complete_graph(n))) == toll_number(complete_graph(n)).value]
    report.check("K_n extreme complete", list(range(1, min(limits.max_n, 6) + 1)), flags)
    return report


# extreme-vs-simplicial -----------------------------------------------------


def _ext_chunk(args: tuple[int, int, int]):
    n, lo, hi = args
    count = 0
    strict = 0
    bad = []
    for G in enumerate_connected_graphs(n, start=lo, stop=hi):
        count += 1
        simplicial, _ = vertex_classes(G)
        ext = extreme_mask(G)
        s = to_mask(simplicial)
        if ext & ~s:
            bad.append((_tag(G), sorted(simplicial), sorted(bits(ext))))
        elif ext != s:
            strict += 1
    return count, bad, strict


def _suite_extreme_vs_simplicial(limits: SuiteLimits) -> VerificationReport:
    report = VerificationReport("extreme-vs-simplicial")
    strict_total = 0
    for n in range(1, limits.max_n + 1):
        results = _pmap(_ext_chunk, _mask_chunks(n, limits.jobs), limits.jobs)
        count = sum(r[0] for r in results)
        strict = sum(r[2] for r in results)
        strict_total += strict
        failures = [f for r in results for f in r[1]]
        _batch_record(report, f"n={n} ({count} graphs, {strict} with Ext strictly inside simplicial)", count, failures)
    spider = fig3_spider()
    report.check(
        "fig3-spider strict containment",
        [3, 0],
        [len(vertex_classes(spider)[0]), popcount(extreme_mask(spider))],
    )
    report.note(strict_containment_graphs=strict_total)
    return report


# presecna ------------------------------------------------------------------


def _presecna_chunk(args: tuple[int, int, int]):
    n, lo, hi = args
    count = 0
    bad = []
    for G in enumerate_connected_graphs(n, start=lo, stop=hi):
        if G.is_complete():
            continue
        count += 1
        try:
            non_cut_non_adjacent_pair(G)
        except AssertionError as exc:
            bad.append((_tag(G), "non-cut non-adjacent pair", str(exc)))
    return count, bad


def _suite_presecna(limits: SuiteLimits) -> VerificationReport:
    report = VerificationReport("presecna")
    for n in range(3, limits.max_n + 1):
        _run_batches(report, n, limits.jobs, _presecna_chunk, "non-complete graphs")
    return report


# Cartesian suites ----------------------------------------------------------


def _cartesian_convexity_instance(args: tuple[Graph, str]) -> VerificationReport:
    G, h_name = args
    H = FACTORS[h_name]()
    p = cartesian_product(G, H)
    P = p.graph
    table = interval_table(P)
    full = P.all_mask
    report = VerificationReport("cartesian-convexity")
    mismatches = []
    convex_count = 0
    for y_mask in range(1, full):
        members = list(bits(y_mask))
        if all(P.closed_mask(v) & y_mask == y_mask for v in members):
            continue
        convex = True
        for i, a in enumerate(members):
            row = table[a]
            for b in members[i + 1:]:
                if row[b] & ~y_mask:
                    convex = False
                    break
            if not convex:
                break
        convex_count += convex
        if convex != _characterize(G, H, p, y_mask, True):
            mismatches.append(sorted(map(p.decode, members)))
    report.check(f"G={_tag(G)} H={h_name} ({convex_count} convex)", 0, len(mismatches), mismatches[:3])
    return report


def _suite_cartesian_convexity(limits: SuiteLimits) -> VerificationReport:
    h_family = limits.h_family or ("K2", "K3")
    items = [(G, h) for G in _graphs(2, limits.max_n) for h in h_family]
    report = _merge("cartesian-convexity", _pmap(_cartesian_convexity_instance, items, limits.jobs))
    C5, K3 = cycle_graph(5), complete_graph(3)
    if limits.max_n < 5 or "K3" not in h_family:
        report.merge(_cartesian_convexity_instance((C5, "K3")))
    p = cartesian_product(C5, K3)
    Y = p.box([1, 2, 3], range(3))
    verdicts = {
        "original": cartesian_tconvex_characterization(C5, K3, Y, "original"),
        "corrected": cartesian_tconvex_characterization(C5, K3, Y, "corrected"),
        "is_t_convex": is_t_convex(p.graph, Y),
    }
    report.check(
        "C5 x K3, Y={1,2,3} x V(K3)",
        {"original": True, "corrected": False, "is_t_convex": False},
        verdicts,
    )
    report.note(
        separator="original predicate accepts a non-convex set",
        instance="C5 x K3",
        Y=sorted(map(p.decode, Y)),
        **verdicts,
    )
    return report


def _cartesian_tn2_instance(args: tuple[Graph, Graph]) -> VerificationReport:
    G, H = args
    return verify_cartesian_tn2(G, H, max_n=PRODUCT_CEILING)


def _suite_cartesian_tn2(limits: SuiteLimits) -> VerificationReport:
    graphs = _graphs(2, limits.max_n)
    items = [(G, H) for G in graphs for H in graphs]
    return _merge("cartesian-tn2", _pmap(_cartesian_tn2_instance, items, limits.jobs))


# Lexicographic suites --------------------------------------------------------


@lru_cache(maxsize=None)
def brute_lex_tn(G: Graph, H: Graph) -> int:
    return toll_number(lexicographic_product(G, H).graph, max_n=PRODUCT_CEILING, max_witnesses=1).value


@lru_cache(maxsize=None)
def _tn(G: Graph) -> int:
    return toll_number(G, max_n=PRODUCT_CEILING, max_witnesses=1).value


def _lex_interval_instance(args: tuple[Graph, str]) -> VerificationReport:
    G, h_name = args
    return verify_lex_interval_formula(G, FACTORS[h_name](), max_n=PRODUCT_CEILING)


def _suite_lex_interval(limits: SuiteLimits) -> VerificationReport:
    h_family = limits.h_family or ("K2", "P3", "P4", "C4", "K13")
    items = [(G, h) for G in _graphs(2, limits.max_n) for h in h_family]
    return _merge("lex-interval", _pmap(_lex_interval_instance, items, limits.jobs))


def _lex_exact_instance(args: tuple[Graph, str]) -> VerificationReport:
    G, h_name = args
    H = FACTORS[h_name]()
    report = VerificationReport("lex-exact")
    brute = brute_lex_tn(G, H)
    formula = lex_toll_number(G, H, max_product=PRODUCT_CEILING)
    tag = f"G={_tag(G)} H={h_name}"
    report.check(tag + " formula", brute, formula)
    if not H.is_complete():
        bound = 3 * _tn(G)
        report.check(tag + " tn<=3tn(G)", f"<= {bound}", brute, ok=brute <= bound)
    return report


def _suite_lex_exact(limits: SuiteLimits) -> VerificationReport:
    h_family = limits.h_family or LEX_EXACT_H
    items = [(G, h) for G in _graphs(2, limits.max_n) for h in h_family]
    return _merge("lex-exact", _pmap(_lex_exact_instance, items, limits.jobs))


def _lex_tn2_instance(args: tuple[Graph, str]) -> VerificationReport:
    G, h_name = args
    H = FACTORS[h_name]()
    report = VerificationReport("lex-tn2")
    brute = brute_lex_tn(G, H)
    tag = f"G={_tag(G)} H={h_name}"
    report.check(tag + " tn=2 iff universal and tn(H)=2", brute == 2, lex_tn2_characterization(G, H), brute)
    if not H.is_complete():
        _, universal = vertex_classes(G)
        if universal:
            report.check(tag + " universal vertex bound", "<= 4", brute, sorted(universal), ok=brute <= 4)
        cover = next(
            ((u, v) for u, v in combinations(G.vertices, 2) if G.masks[u] | G.masks[v] == G.all_mask), None
        )
        if cover:
            report.check(tag + " two-neighbourhood bound", "<= 4", brute, cover, ok=brute <= 4)
    return report


def _suite_lex_tn2(limits: SuiteLimits) -> VerificationReport:
    h_family = limits.h_family or DEFAULT_H
    if "K2" in h_family:
        raise GraphError("H = K2 is excluded from the tn = 2 characterisation")
    items = [(G, h) for G in _graphs(2, limits.max_n) for h in h_family]
    return _merge("lex-tn2", _pmap(_lex_tn2_instance, items, limits.jobs))


def _lex_3tn_instance(args: tuple[Graph, str]) -> VerificationReport:
    G, h_name = args
    H = FACTORS[h_name]()
    report = VerificationReport("lex-3tn")
    tag = f"G={_tag(G)} H={h_name}"
    ext = popcount(extreme_mask(G))
    brute = brute_lex_tn(G, H)
    tn_g = _tn(G)
    tight = brute == 3 * tn_g
    if ext < 2 or G.n == 2 or H.is_complete():
        if ext < 2 and not H.is_complete():
            report.note(kind="outside-hypothesis", instance=tag, ext=ext, tn_product=brute, three_tn_G=3 * tn_g)
        return report
    verdict = lex_3tn_conditions(G, H)
    report.check(
        tag + " conditions iff tn=3tn(G)",
        tight,
        verdict.holds,
        {"failed_condition": verdict.failed_condition, "witness": verdict.witness, "tn_product": brute},
    )
    if verdict.details.get("pair_disagreement"):
        report.note(kind="d3-clause-pair-disagreement", instance=tag, details=verdict.details)
    if tight:
        sets = toll_number(G).witnesses
        open_ok = all(has_disjoint_open_neighborhoods(G, D) for D in sets)
        closed_ok = all(is_2_packing(G, D) for D in sets)
        report.check(tag + " minimum toll sets: open neighbourhoods disjoint", True, open_ok, [sorted(D) for D in sets])
        report.note(kind="2-packing", instance=tag, open_disjoint=open_ok, closed_disjoint=closed_ok)
    return report


def _suite_lex_3tn(limits: SuiteLimits) -> VerificationReport:
    h_family = limits.h_family or DEFAULT_H
    items = [(G, h) for G in _graphs(2, limits.max_n) for h in h_family]
    report = _merge("lex-3tn", _pmap(_lex_3tn_instance, items, limits.jobs))
    outside = [n for n in report.notes if n.get("kind") == "outside-hypothesis"]
    report.notes = [n for n in report.notes if n.get("kind") != "outside-hypothesis"]
    report.note(
        kind="d3-clause-summary",
        pair_disagreements=sum(1 for n in report.notes if n.get("kind") == "d3-clause-pair-disagreement"),
    )
    for e in (0, 1):
        group = [n for n in outside if n["ext"] == e]
        report.note(
            kind="outside-hypothesis-summary",
            ext=e,
            instances=len(group),
            tight=sum(1 for n in group if n["tn_product"] == n["three_tn_G"]),
            below=sum(1 for n in group if n["tn_product"] < n["three_tn_G"]),
        )
    for n in range(4, 7):
        claim = path_star_claim(n, 3, max_n=PRODUCT_CEILING)
        if claim["agrees"]:
            report.check(f"P{n} o K1,3 claimed 6", 6, claim["brute_force"])
        else:
            report.note(kind="open-question-discrepancy", **claim)
    return report


def _hull_instance(args: tuple[Graph, int]) -> VerificationReport:
    G, k = args
    return lex_hull_bounds_check(G, k, H=path_graph(3) if k == 2 else None, max_n=PRODUCT_CEILING)


def _suite_hull_bounds(limits: SuiteLimits) -> VerificationReport:
    items = [(G, k) for G in _graphs(2, limits.max_n) for k in (2, 3)]
    return _merge("hull-bounds", _pmap(_hull_instance, items, limits.jobs))


def _lemma012_instance(args: tuple[Graph, str]) -> VerificationReport:
    G, h_name = args
    return lemma012_check(G, FACTORS[h_name](), max_n=PRODUCT_CEILING)


def _suite_lemma012(limits: SuiteLimits) -> VerificationReport:
    h_family = limits.h_family or DEFAULT_H
    items = [(G, h) for G in _graphs(2, limits.max_n) for h in h_family]
    return _merge("lemma-012", _pmap(_lemma012_instance, items, limits.jobs))


SUITES: dict[str, SuiteSpec] = {
    "interval-oracle": SuiteSpec(_suite_interval_oracle, 6, 7),
    "inequality-chain": SuiteSpec(_suite_inequality_chain, 6, 7),
    "cartesian-convexity": SuiteSpec(_suite_cartesian_convexity, 5, 5, ("K2", "K3")),
    "cartesian-tn2": SuiteSpec(_suite_cartesian_tn2, 4, 5),
    "lex-interval": SuiteSpec(_suite_lex_interval, 4, 5, ("K2", "P3", "P4", "C4", "K13")),
    "lex-exact": SuiteSpec(_suite_lex_exact, 4, 5, LEX_EXACT_H),
    "lex-tn2": SuiteSpec(_suite_lex_tn2, 5, 6, DEFAULT_H),
    "lex-3tn": SuiteSpec(_suite_lex_3tn, 5, 6, DEFAULT_H),
    "hull-bounds": SuiteSpec(_suite_hull_bounds, 4, 5),
    "lemma-012": SuiteSpec(_suite_lemma012, 4, 5, DEFAULT_H),
    "presecna": SuiteSpec(_suite_presecna, 7, 7),
    "extreme-vs-simplicial": SuiteSpec(_suite_extreme_vs_simplicial, 7, 7),
}


def run_suite(
    suite_id: str, max_n: int | None = None, h_family: Sequence[str] | None = None, jobs: int = 1
) -> VerificationReport:
    """Run a named verification suite."""
    try:
        spec = SUITES[suite_id]
    except KeyError:
        raise GraphError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}") from None
    max_n = spec.default_max_n if max_n is None else max_n
    if not 1 <= max_n <= spec.ceiling:
        raise GraphError(f"suite {suite_id} accepts max-n in 1..{spec.ceiling}, got {max_n}")
    h = tuple(h_family) if h_family else spec.default_h
    for name in h:
        if name not in FACTORS:
            raise GraphError(f"unknown factor {name!r}; known: {', '.join(FACTORS)}")
    start = time.perf_counter()
    report = spec.run(SuiteLimits(max_n, h, max(1, jobs)))
    report.elapsed = time.perf_counter() - start
    return report
