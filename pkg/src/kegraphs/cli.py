"""Command-line entry point: ``kegraphs <subcommand> ...``.

Exit status is 0 on success, 1 when any theorem check fails and 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .configurations import SearchBudgetError
from .decomposition import crossing_edges
from .graph import (
    Graph,
    GraphError,
    emit_graph6,
    named_graph,
    parse_edge_list,
    parse_graph6,
)
from .harness import (
    CHECK_IDS,
    PREDICATES,
    Facts,
    HarnessError,
    Limits,
    Report,
    SweepSpec,
    iter_instances,
    search,
    sweep,
    verify_graph,
)
from .matching import MatchingCapError
from .oracles import OracleCapError
from .sachs import SachsCapError, enumerate_sachs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="graph file ('-' for stdin)")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6",
                   help="format of PATH (default: graph6)")
    p.add_argument("--graph6", metavar="STRING", help="graph given inline as graph6")
    p.add_argument("--name", help="built-in named graph (paw, bowtie, domino, ...)")


def _add_limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-matchings-cap", type=int, default=Limits.max_matchings)
    p.add_argument("--budget", type=int, default=Limits.budget,
                   help="node budget for configuration searches")


def _add_json(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", nargs="?", const="-", metavar="FILE",
                   help="write the JSON report to FILE (stdout when omitted)")
    p.add_argument("--timing", action="store_true", help="record wall-clock timing in reports")


def _add_sweep_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    mode.add_argument("--stream", metavar="GRAPH6_FILE")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kegraphs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="SD/KE and PF/PFF partitions of one graph")
    _add_graph_input(p)
    _add_limits(p)
    _add_json(p)

    p = sub.add_parser("spectra", help="det, perm, Sachs census and prk of one graph")
    _add_graph_input(p)
    _add_json(p)
    p.add_argument("--list", action="store_true", help="also list every Sachs subgraph")

    p = sub.add_parser("verify", help="run every theorem check on one graph")
    _add_graph_input(p)
    _add_limits(p)
    _add_json(p)

    p = sub.add_parser("sweep", help="run theorem checks over a stream of graphs")
    _add_sweep_spec(p)
    _add_limits(p)
    _add_json(p)
    p.add_argument("--checks", nargs="+", choices=CHECK_IDS, metavar="CHECK",
                   help="subset of check ids (default: all)")
    p.add_argument("--figures", metavar="DIR", help="write checks.tsv and PNG figures to DIR")

    p = sub.add_parser("search", help="catalog graphs satisfying a named predicate")
    p.add_argument("--predicate", required=True, help=f"one of: {', '.join(PREDICATES)}")
    _add_sweep_spec(p)
    _add_limits(p)
    _add_json(p)
    p.add_argument("--figures", metavar="DIR", help="write hits.g6 and checks.tsv to DIR")

    p = sub.add_parser("gen", help="print graph6 lines for a sweep specification")
    _add_sweep_spec(p)
    return parser


def _read_graph(args: argparse.Namespace) -> Graph:
    given = [x is not None for x in (args.path, args.graph6, args.name)]
    if sum(given) != 1:
        raise UsageError("give exactly one of PATH, --graph6 or --name")
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    if args.name is not None:
        return named_graph(args.name)
    try:
        text = sys.stdin.read() if args.path == "-" else open(args.path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc}") from None
    if args.format == "edgelist":
        return parse_edge_list(text)
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 1:
        raise UsageError(f"expected one graph6 line in {args.path}, found {len(lines)}")
    return parse_graph6(lines[0])


def _limits(args: argparse.Namespace) -> Limits:
    return Limits(max_matchings=args.max_matchings_cap, budget=args.budget)


def _spec(args: argparse.Namespace) -> SweepSpec:
    if args.exhaustive:
        return SweepSpec(n=args.n, mode="exhaustive")
    if args.random:
        return SweepSpec(n=args.n, mode="random", samples=args.samples, p=args.p, seed=args.seed)
    return SweepSpec(mode="stream", source=args.stream)


def _emit_json(payload: dict[str, Any], target: str) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fmt(vertices) -> str:
    return "{" + ", ".join(str(v) for v in sorted(vertices)) + "}"


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    f = Facts(g, _limits(args))
    pf, sd = f.pf_partition, f.sd_mask
    payload = {
        "graph6": f.graph6,
        "n": g.n,
        "ke": f.ke,
        "alpha": f.alpha,
        "mu": f.mu,
        "maximum_matchings": len(f.matchings),
        "SD": sorted(v for v in range(g.n) if sd >> v & 1),
        "KE": sorted(v for v in range(g.n) if not sd >> v & 1),
        "PF": sorted(pf.block_a),
        "PFF": sorted(pf.block_b),
        "pf_crossing_edges": [list(e) for e in crossing_edges(pf)],
    }
    if args.json:
        _emit_json(payload, args.json)
    if args.json != "-":
        print(f"graph6     {payload['graph6']}")
        print(f"KE graph   {'yes' if f.ke else 'no'} (alpha={f.alpha}, mu={f.mu}, n={g.n})")
        print(f"SD         {_fmt(payload['SD'])}")
        print(f"KE         {_fmt(payload['KE'])}")
        print(f"PF         {_fmt(payload['PF'])}")
        print(f"PFF        {_fmt(payload['PFF'])}")
        print(f"E(PF,PFF)  {payload['pf_crossing_edges']}")
    return EXIT_OK


def cmd_spectra(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    f = Facts(g)
    det, perm, count = f.sums
    payload: dict[str, Any] = {
        "graph6": f.graph6, "det": det, "perm": perm, "sachs_count": count, "prk": f.prk,
    }
    if args.list:
        payload["sachs"] = [
            {"components": [list(c) for c in h.components], "k": h.k, "m": h.m}
            for h in enumerate_sachs(g)
        ]
    if args.json:
        _emit_json(payload, args.json)
    if args.json != "-":
        print(f"det {det}\nperm {perm}\nsachs_count {count}\nprk {f.prk}")
        for h in payload.get("sachs", []):
            print(f"  k={h['k']} m={h['m']} {h['components']}")
    return EXIT_OK


def _finish_report(report: Report, args: argparse.Namespace) -> int:
    if args.json:
        _emit_json(report.to_dict(), args.json)
    return EXIT_FAIL if report.failed else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    report = verify_graph(g, limits=_limits(args), timing=args.timing)
    if args.json != "-":
        print(f"graph6 {emit_graph6(g)}")
        for c in report.checks:
            extra = f"  {c['message']}" if c.get("message") else ""
            print(f"{c['status']:<15} {c['id']}{extra}")
    return _finish_report(report, args)


def cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep(_spec(args), checks=args.checks, limits=_limits(args),
                   parallel=args.parallel, timing=args.timing)
    if args.json != "-":
        print("check\tstatus\tpass\tfail\tnot-applicable\terror")
        for c in report.checks:
            k = c["counts"]
            print(f"{c['id']}\t{c['status']}\t{k['pass']}\t{k['fail']}\t{k['not-applicable']}\t{k['error']}")
        print(f"# instances\t{report.summary['instances']}")
    if args.figures:
        from .plotting import render_report_figures

        for path in render_report_figures(report.to_dict(), args.figures):
            print(f"# wrote\t{path}", file=sys.stderr)
    return _finish_report(report, args)


def cmd_search(args: argparse.Namespace) -> int:
    report = search(args.predicate, _spec(args), limits=_limits(args),
                    parallel=args.parallel, timing=args.timing)
    if args.json != "-":
        for hit in report.witnesses:
            print(hit["graph6"])
        print(f"# instances\t{report.summary['instances']}\thits\t{report.summary['hits']}")
    if args.figures:
        from pathlib import Path

        from .plotting import write_check_table

        out = Path(args.figures)
        out.mkdir(parents=True, exist_ok=True)
        (out / "hits.g6").write_text("".join(h["graph6"] + "\n" for h in report.witnesses))
        write_check_table(report.to_dict(), out / "checks.tsv")
    return _finish_report(report, args)


def cmd_gen(args: argparse.Namespace) -> int:
    for g6 in iter_instances(_spec(args)):
        print(g6)
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "spectra": cmd_spectra,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "search": cmd_search,
    "gen": cmd_gen,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GraphError, HarnessError) as exc:
        print(f"kegraphs {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatchingCapError, SearchBudgetError, OracleCapError, SachsCapError) as exc:
        print(f"kegraphs {args.command}: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
