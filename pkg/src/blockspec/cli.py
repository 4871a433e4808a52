"""Command-line interface: ``blockspec analyze|generate|enumerate|conjecture|reduce``.

Exit codes: 0 success, 1 counterexample found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .blocks import classify
from .engines import count_alpha_assignments, det_block_formula, reduce
from .errors import BlockSpecError, InvalidSpec
from .families import classify_family_tags, spec_from_dict
from .fixtures import fixture_names, load_fixture
from .graph import (
    LoopWeightedGraph,
    build,
    format_fraction,
    graph_from_dict,
    parse_graph6,
    write_dot,
    write_edgelist_json,
    write_graph6,
)
from .lab import iter_tiers, test_conjecture_1, test_conjecture_2, write_report
from .linalg import det_graph, rank_graph

# above this many cut-vertex assignments the block formula is skipped
FORMULA_ASSIGNMENT_CAP = 200_000

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(source: str | None) -> tuple[str, str]:
    if source in (None, "-"):
        return "<stdin>", sys.stdin.read()
    try:
        return source, Path(source).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc


def parse_graphs(text: str, fmt: str) -> list[LoopWeightedGraph]:
    """Graphs from graph6 lines or one edge-list JSON document (bare or wrapped under "graph")."""
    if fmt == "graph6":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise UsageError("no graph6 input")
        return [parse_graph6(ln) for ln in lines]
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"bad edge-list JSON: {exc}") from exc
    docs = doc if isinstance(doc, list) else [doc]
    out = []
    for d in docs:
        if not isinstance(d, dict):
            raise InvalidSpec("edge-list JSON must be an object or a list of objects")
        out.append(graph_from_dict(d["graph"] if "graph" in d else d))
    return out


def _load_graphs(args) -> tuple[str, list[LoopWeightedGraph]]:
    if getattr(args, "fixture", None):
        try:
            return f"fixture:{args.fixture}", [load_fixture(args.fixture).graph]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from exc
    name, text = _read_input(args.input)
    return name, parse_graphs(text, args.format)


def analyze_graph(g: LoopWeightedGraph, descriptor: str = "") -> dict:
    """The AnalysisReport for one graph as a JSON-ready dict."""
    flags = classify(g)
    det = det_graph(g)
    rank = rank_graph(g)
    engines = ["det_exact"]
    agreement = {}
    certificate = None
    plain_block = flags.is_block_graph and flags.is_connected and not g.has_loops
    if plain_block and count_alpha_assignments(g) <= FORMULA_ASSIGNMENT_CAP:
        engines.append("det_block_formula")
        agreement["det_block_formula"] = det_block_formula(g) == det
    if flags.is_block_graph:
        cert = reduce(g)
        engines.append("reduction")
        agreement["reduction_rank"] = cert.rank() == rank
        certificate = cert.to_dict()
    return {
        "input": descriptor,
        "n": g.n,
        "is_connected": flags.is_connected,
        "flags": flags.to_dict(),
        "determinant": format_fraction(det),
        "rank": rank,
        "nullity": g.n - rank,
        "engines_used": engines,
        "agreement": {**agreement, "all": all(agreement.values())},
        "certificate": certificate,
        "tags": classify_family_tags(g),
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_analyze(args) -> int:
    name, graphs = _load_graphs(args)
    reports = []
    for i, g in enumerate(graphs):
        desc = name if len(graphs) == 1 else f"{name}#{i}"
        reports.append(analyze_graph(g, f"{desc} ({args.format})" if not name.startswith("fixture:") else desc))
    _emit(_dump(reports[0] if len(reports) == 1 else reports), args.out)
    return EXIT_OK


def _load_spec(arg: str):
    text = arg if arg.lstrip().startswith("{") else _read_input(arg)[1]
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"bad spec JSON: {exc}") from exc
    return spec_from_dict(doc)


def cmd_generate(args) -> int:
    g = build(_load_spec(args.spec))
    if args.format == "graph6":
        text = write_graph6(g) + "\n"
    elif args.format == "dot":
        text = write_dot(g)
    else:
        text = write_edgelist_json(g) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.n_max < 0:
        raise UsageError("n_max must be >= 0")
    lines = []
    if args.n_max >= 1:
        for _, tier in iter_tiers(args.n_max, args.k2_forbidden, args.jobs):
            lines.extend(tier)
    _emit("".join(g6 + "\n" for g6 in lines), args.out)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    checkpoint = args.checkpoint
    if checkpoint is None and args.out:
        checkpoint = args.out + ".checkpoint.json"
    if args.resume and checkpoint is None:
        raise UsageError("--resume needs --checkpoint or --out")
    if args.id == 1:
        n_max = 11 if args.n_max is None else args.n_max
        if n_max < 3:
            raise UsageError("conjecture 1 needs --n-max >= 3")
        report = test_conjecture_1(n_max, jobs=args.jobs, checkpoint=checkpoint, resume=args.resume,
                                   stop_after=args.stop_after)
    else:
        parts = 4 if args.parts is None else args.parts
        if parts < 1:
            raise UsageError("conjecture 2 needs --parts >= 1")
        report = test_conjecture_2(parts, exhaustive=not args.sampled, samples=args.samples,
                                   seed=args.seed, jobs=args.jobs, checkpoint=checkpoint,
                                   resume=args.resume, stop_after=args.stop_after)
    if args.out:
        write_report(report, args.out)
    else:
        sys.stdout.write(report.to_json())
    for c in report.counterexamples:
        print(f"COUNTEREXAMPLE {c['graph6']}", file=sys.stderr)
    print(f"elapsed {report.elapsed:.2f}s, complete={str(report.complete).lower()}", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if report.counterexamples else EXIT_OK


def cmd_reduce(args) -> int:
    name, graphs = _load_graphs(args)
    out = []
    for g in graphs:
        cert = reduce(g)
        rank = rank_graph(g)
        out.append({"input": name, "n": g.n, "certificate": cert.to_dict(),
                    "rank_exact": rank, "consistent": cert.rank() == rank})
    _emit(_dump(out[0] if len(out) == 1 else out), args.out)
    return EXIT_OK


def _default_jobs() -> int:
    raw = os.environ.get("BLOCKSPEC_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blockspec", description="Exact singularity analysis of block graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("input", nargs="?", help="input file, or - / omitted for stdin")
        sp.add_argument("--format", choices=["graph6", "edgelist-json"], default="graph6")
        sp.add_argument("--fixture", help=f"use a bundled fixture ({', '.join(fixture_names())})")
        sp.add_argument("--out", help="write to this file instead of stdout")

    sp = sub.add_parser("analyze", help="classify a graph and compute determinant, rank and nullity")
    add_input(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("reduce", help="run the reduction pipeline and print its certificate")
    add_input(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("generate", help="build a graph from a family or build spec (JSON)")
    sp.add_argument("spec", help="spec JSON inline, a file, or - for stdin")
    sp.add_argument("--format", choices=["graph6", "edgelist-json", "dot"], default="graph6")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("enumerate", help="list connected block graphs up to n_max vertices as graph6")
    sp.add_argument("n_max", type=int)
    sp.add_argument("--k2-forbidden", action="store_true", help="only blocks of order >= 3")
    sp.add_argument("--jobs", type=int, default=_default_jobs())
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("conjecture", help="run a conjecture sweep and write a report")
    sp.add_argument("id", type=int, choices=[1, 2])
    sp.add_argument("--n-max", type=int, help="conjecture 1 vertex bound (default 11)")
    sp.add_argument("--parts", type=int, help="conjecture 2 part size bound (default 4)")
    sp.add_argument("--sampled", action="store_true", help="conjecture 2: random sample instead of exhaustive")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=_default_jobs())
    sp.add_argument("--out", help="report path; a .counterexamples.g6 sidecar is written next to it")
    sp.add_argument("--checkpoint", help="checkpoint path (default: <out>.checkpoint.json)")
    sp.add_argument("--resume", action="store_true", help="continue from the checkpoint")
    sp.add_argument("--stop-after", type=int, help="stop after this vertex-count tier")
    sp.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (BlockSpecError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
