"""Command-line front end: ``tollconvex <subcommand> ...``.

Exit codes: 0 success (and every suite passed), 1 a verification found a
violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Sequence

from .convexity import extreme_vertices, is_t_convex, t_convex_hull, toll_closure, toll_interval
from .graph import Graph, GraphError, named_graph, product
from .invariants import geodetic_number, t_hull_number, toll_number
from .io import parse_graph, serialize_graph, sniff_format
from .products import TollNumberBounds, lex_toll_number, min_toll_dominating_cost
from .report import _plain
from .suites import FACTORS, SUITES, run_suite

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_name(spec: str) -> Graph:
    """``cycle:5``, ``star:3``, ``fig3-spider`` and friends."""
    name, _, rest = spec.partition(":")
    params = []
    for tok in filter(None, rest.split(",")):
        try:
            params.append(int(tok))
        except ValueError:
            raise UsageError(f"graph parameter {tok!r} is not an integer") from None
    return named_graph(name, *params)


def parse_vertex_set(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"vertex set {text!r} must be integers separated by commas") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_text(text: str, fmt: str | None) -> Graph:
    return parse_graph(text, fmt or sniff_format(text))


def load_graph(args: argparse.Namespace) -> Graph:
    if args.name and args.input:
        raise UsageError("give either --input or --name, not both")
    if args.name:
        return parse_name(args.name)
    return _parse_text(_read(args.input or "-"), args.format)


def load_operand(token: str, fmt: str | None) -> Graph:
    """A product operand: an existing file path, else a family spec."""
    if token == "-" or os.path.exists(token):
        return _parse_text(_read(token), fmt)
    try:
        return parse_name(token)
    except GraphError as exc:
        raise UsageError(f"{token!r} is neither a readable file nor a graph family ({exc})") from None


def emit(result: dict[str, Any], output: str, out=None) -> None:
    out = out or sys.stdout
    result = _plain(result)
    if output == "records":
        out.write(json.dumps(result, separators=(",", ":")) + "\n")
    elif output == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result.keys())
        writer.writerow(v if isinstance(v, (int, str)) else json.dumps(v) for v in result.values())
        out.write(buf.getvalue())
    else:
        for key, value in result.items():
            out.write(f"{key}: {value if isinstance(value, (int, str)) else json.dumps(value)}\n")


def _invariant(res) -> dict[str, Any]:
    return {"value": res.value, "witness": sorted(res.witnesses[0])}


def cmd_interval(G: Graph, args) -> dict:
    return {"u": args.u, "v": args.v, "interval": toll_interval(G, args.u, args.v)}


def cmd_closure(G: Graph, args) -> dict:
    S = parse_vertex_set(args.set)
    return {"set": sorted(set(S)), "closure": toll_closure(G, S)}


def cmd_hull(G: Graph, args) -> dict:
    S = parse_vertex_set(args.set)
    trace = t_convex_hull(G, S)
    return {"set": sorted(set(S)), "hull": trace.fixed, "stages": [sorted(s) for s in trace.stages]}


def cmd_convex(G: Graph, args) -> dict:
    S = parse_vertex_set(args.set)
    return {"set": sorted(set(S)), "t_convex": is_t_convex(G, S, method=args.method)}


def cmd_toll_number(G: Graph, args) -> dict:
    return _invariant(toll_number(G, max_n=args.max_n, max_witnesses=1))


def cmd_t_hull_number(G: Graph, args) -> dict:
    return _invariant(t_hull_number(G, max_n=args.max_n, max_witnesses=1))


def cmd_geodetic_number(G: Graph, args) -> dict:
    return _invariant(geodetic_number(G, max_n=args.max_n, max_witnesses=1))


def cmd_extreme(G: Graph, args) -> dict:
    ext = extreme_vertices(G)
    return {"count": len(ext), "extreme": ext}


def cmd_lex_tn(args) -> dict:
    G, H = load_operand(args.g, args.format), load_operand(args.h, args.format)
    value = lex_toll_number(G, H, max_product=args.max_product)
    if isinstance(value, TollNumberBounds):
        return {"exact": False, "lower": value.lower, "upper": value.upper}
    return {"exact": True, "value": value}


def cmd_triple(args) -> dict:
    G = load_operand(args.g, args.format)
    cost, triple = min_toll_dominating_cost(G, args.tnh)
    return {"cost": cost, "A": triple.A, "B": triple.B, "C": triple.C}


def cmd_product(args) -> str:
    G, H = load_operand(args.g, args.format), load_operand(args.h, args.format)
    kind = "cartesian" if args.kind == "cartesian" else "lexicographic"
    return serialize_graph(product(G, H, kind).graph, args.format or "edgelist")


def cmd_verify(args) -> int:
    h = tuple(filter(None, args.h.split(","))) if args.h else None
    report = run_suite(args.suite, max_n=args.max_n, h_family=h, jobs=args.jobs)
    if args.output == "records":
        sys.stdout.write("\n".join(report.to_lines(include_elapsed=args.timing)) + "\n")
    elif args.output == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text() + "\n")
        if args.timing:
            sys.stdout.write(f"elapsed: {report.elapsed:.3f}s\n")
    return EXIT_OK if report.passed else EXIT_VIOLATION


GRAPH_COMMANDS = {
    "interval": cmd_interval,
    "closure": cmd_closure,
    "hull": cmd_hull,
    "convex": cmd_convex,
    "toll-number": cmd_toll_number,
    "t-hull-number": cmd_t_hull_number,
    "geodetic-number": cmd_geodetic_number,
    "extreme": cmd_extreme,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file ('-' for stdin; the default)")
    common.add_argument("--format", choices=["edgelist", "graph6"], help="input format (guessed when omitted)")
    common.add_argument("--name", help="named graph, e.g. cycle:5, star:3, fig3-spider")
    common.add_argument("--output", choices=["text", "csv", "records"], default="text")

    parser = argparse.ArgumentParser(prog="tollconvex", description="Toll convexity toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interval", parents=[common], help="toll interval T(u, v)")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    for name, helptext in (("closure", "toll closure of a set"), ("hull", "t-convex hull of a set")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("set", help="vertices, e.g. 0,2,4")
    p = sub.add_parser("convex", parents=[common], help="is the set t-convex?")
    p.add_argument("set")
    p.add_argument("--method", choices=["closure", "separator"], default="closure")
    for name in ("toll-number", "t-hull-number", "geodetic-number"):
        p = sub.add_parser(name, parents=[common], help=f"{name.replace('-', ' ')} with a witness set")
        p.add_argument("--max-n", type=int, default=12, help="refuse graphs above this many vertices")
    sub.add_parser("extreme", parents=[common], help="extreme vertices")

    p = sub.add_parser("product", parents=[common], help="build G x H and print it")
    p.add_argument("kind", choices=["cartesian", "lex"])
    p.add_argument("g", help="file path or family spec such as path:3")
    p.add_argument("h")
    p = sub.add_parser("lex-tn", parents=[common], help="toll number of the lexicographic product")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--max-product", type=int, default=12, help="exact search limit when H is complete")
    p = sub.add_parser("triple", parents=[common], help="cheapest toll-dominating triple")
    p.add_argument("g")
    p.add_argument("--tnh", type=int, required=True, help="toll number of the second factor")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-n", type=int, help="largest factor size (suite default when omitted)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--h", help=f"comma-separated second factors from {','.join(FACTORS)}")
    p.add_argument("--timing", action="store_true", help="include elapsed time (breaks byte-stability)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "product":
            sys.stdout.write(cmd_product(args))
            return EXIT_OK
        if args.command == "lex-tn":
            result = cmd_lex_tn(args)
        elif args.command == "triple":
            result = cmd_triple(args)
        else:
            result = GRAPH_COMMANDS[args.command](load_graph(args), args)
    except (UsageError, GraphError, OSError) as exc:
        print(f"tollconvex {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(result, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
