"""Command-line entry point ``ehrgraph``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid
input, 4 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .arrangements import count_arrangements, load_triangulation, realize_arrangement, trace_curves
from .ehrhart import ehrhart_of, format_qp, period
from .errors import BudgetExceeded, EhrGraphError, InputError
from .lattice import enumerate_p_points, enumerate_q_points, count_p, count_q, vol_coset
from .multigraph import enumerate_internally_eulerian, eulerian_count_formula, load_g13, to_g13, validate_13
from .nni import NNITrail, apply_nni, canonicalize
from .svg import emit_svg, parse_layout
from .trees import skeleton, tree_vertices_p, tree_vertices_q
from .verify import SUITES, reports_json, run_suite, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3, 4


def _subset_text(H) -> str:
    return "{" + ",".join(str(e) for e in sorted(H)) + "}"


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def cmd_stats(args) -> int:
    g = load_g13(args.file)
    s = validate_13(g)
    print(f"h: {s.h}")
    print(f"k: {s.k}")
    print(f"n: {s.n}")
    print(f"m: {s.m}")
    print(f"connected: {str(s.connected).lower()}")
    print(f"tree: {str(s.is_tree).lower()}")
    print(f"cubic: {str(s.is_cubic).lower()}")
    print(f"is_13: {str(s.is_13).lower()}")
    if s.connected and s.is_13:
        print(f"N_G: {eulerian_count_formula(s)}")
    return EXIT_OK


def cmd_count(args) -> int:
    g = load_g13(args.file)
    method = "dfs" if args.dfs else "contract"
    n = count_p(g, args.t, method) if args.polytope == "P" else count_q(g, args.t, method)
    print(n)
    return EXIT_OK


def cmd_points(args) -> int:
    g = load_g13(args.file)
    if args.polytope == "P":
        rows = [list(w) for w in enumerate_p_points(g, args.t)]
    else:
        rows = [list(p.w) + list(p.z) for p in enumerate_q_points(g, args.t)]
    text = "".join(",".join(str(x) for x in r) + "\n" for r in rows)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
        print(len(rows))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ehrhart(args) -> int:
    g = load_g13(args.file)
    qp = ehrhart_of(g, args.polytope)
    if args.json:
        print(json.dumps(qp.to_json()))
    else:
        print(format_qp(qp))
    return EXIT_OK


def cmd_period(args) -> int:
    g = load_g13(args.file)
    print(period(ehrhart_of(g, args.polytope)))
    return EXIT_OK


def cmd_cosets(args) -> int:
    g = load_g13(args.file)
    total = 0
    for H in enumerate_internally_eulerian(g):
        v = vol_coset(g, H, args.t)
        total += v
        print(f"{_subset_text(H)}\t{v}")
    print(f"total\t{total}")
    return EXIT_OK


def cmd_nni(args) -> int:
    g = load_g13(args.file)
    sys.stdout.write(to_g13(apply_nni(g, NNITrail.parse(args.trail))))
    return EXIT_OK


def cmd_canonicalize(args) -> int:
    g = load_g13(args.file)
    result, moves = canonicalize(g)
    sys.stdout.write(to_g13(result))
    for trail in moves:
        print(f"# {trail.to_text()}")
    if args.moves:
        Path(args.moves).write_text("".join(t.to_text() + "\n" for t in moves), encoding="utf-8")
    return EXIT_OK


def cmd_tree_vertices(args) -> int:
    g = load_g13(args.file)
    if args.polytope == "P":
        for x in tree_vertices_p(g):
            print(",".join(_frac(v) for v in x))
    else:
        for p in tree_vertices_q(g):
            print(",".join(str(v) for v in list(p.w) + list(p.z)))
    return EXIT_OK


def cmd_skeleton(args) -> int:
    g = load_g13(args.file)
    verts, pairs = skeleton(g)
    print(f"# {len(verts)} vertices, {len(pairs)} edges")
    for i, H in enumerate(verts):
        print(f"v {i} {_subset_text(H)}")
    for i, j in pairs:
        print(f"e {i} {j}")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = SUITES if args.suite in (None, "all") else (args.suite,)
    if any(n not in SUITES for n in names):
        print(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    failed = False
    all_reports = []
    for name in names:
        reports = run_suite(name, args.grid, args.jobs)
        all_reports += reports
        summary = summarize(name, reports)
        failed |= not summary.ok
        if not args.json:
            print(summary.to_text())
            if args.verbose:
                for r in reports:
                    print("  " + r.to_text().replace("\n", "\n  "))
    if args.json:
        print(reports_json(all_reports))
    return EXIT_FAIL if failed else EXIT_OK


def _read_point(text: str) -> tuple[int, ...]:
    raw = Path(text).read_text(encoding="utf-8") if Path(text).is_file() else text
    vals = [v for v in raw.replace("\n", ",").split(",") if v.strip()]
    try:
        return tuple(int(v) for v in vals)
    except ValueError as exc:
        raise InputError(f"point must be comma-separated integers, got {raw!r}") from exc


def cmd_arrangements(args) -> int:
    tri = load_triangulation(Path(args.file).read_text(encoding="utf-8"))
    print(count_arrangements(tri, args.t))
    if args.svg:
        system = None
        if args.point:
            pt = _read_point(args.point)
            if len(pt) == tri.E + tri.F:
                from .polytopes import QPoint

                pt = QPoint(pt[: tri.E], pt[tri.E :])
            elif len(pt) != tri.E:
                raise InputError(f"point needs {tri.E} weights (optionally followed by {tri.F} node values)")
            system = realize_arrangement(tri, pt, args.t)
            print(f"curves: {len(trace_curves(system))}")
        layout = parse_layout(Path(args.layout).read_text(encoding="utf-8")) if args.layout else None
        Path(args.svg).write_text(emit_svg(tri, system, layout), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ehrgraph", description="Lattice points and Ehrhart quasi-polynomials of {1,3}-graph polytopes")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help=".g13 graph file")
        p.set_defaults(func=fn)
        return p

    def polytope_flag(p, required=True):
        p.add_argument("--polytope", choices=["P", "Q"], required=required, default=None if required else "P")

    graph_cmd("stats", cmd_stats, "structural statistics")
    p = graph_cmd("count", cmd_count, "count lattice points of tP or tQ")
    polytope_flag(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--dfs", action="store_true", help="use the depth-first enumerator")
    p = graph_cmd("points", cmd_points, "enumerate lattice points")
    polytope_flag(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--csv", help="write points to this path")
    p = graph_cmd("ehrhart", cmd_ehrhart, "Ehrhart quasi-polynomial")
    polytope_flag(p)
    p.add_argument("--json", action="store_true")
    p = graph_cmd("period", cmd_period, "period of the Ehrhart quasi-polynomial")
    polytope_flag(p)
    p = graph_cmd("cosets", cmd_cosets, "coset volumes per internally Eulerian subgraph")
    p.add_argument("--t", type=int, required=True)
    p = graph_cmd("nni", cmd_nni, "apply one NNI move")
    p.add_argument("--trail", required=True, help='"a e b side"')
    p = graph_cmd("canonicalize", cmd_canonicalize, "NNI moves to the caterpillar")
    p.add_argument("--moves", help="also write the move list to this path")
    p = graph_cmd("tree-vertices", cmd_tree_vertices, "vertices of P_T or Q_T")
    polytope_flag(p, required=False)
    graph_cmd("skeleton", cmd_skeleton, "vertex adjacency of P_T")
    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.add_argument("--grid", choices=["small", "full"], default="small")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("arrangements", help="count arrangements of curves on a triangulated sphere")
    p.add_argument("file", help=".tri triangulation file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--svg", help="write a drawing to this path")
    p.add_argument("--point", help="comma-separated weights (or a file holding them)")
    p.add_argument("--layout", help="vertex coordinates, one 'v x y' per line")
    p.set_defaults(func=cmd_arrangements)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EhrGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
