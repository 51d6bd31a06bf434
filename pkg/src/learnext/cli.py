"""Command-line entry points.

Subcommands: ``gen-corpus``, ``build-graph``, ``sweep``, ``simulate``,
``serve``. Exit codes: 0 on success, 1 on usage errors, 2 on data errors
(unreadable or malformed corpus/graph/params files).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .corpus import CorpusError, load_corpus, dump_corpus, concept_stats
from .pograph import (
    DEFAULT_ALPHA,
    GraphConfig,
    GraphError,
    build_graph,
    density_sweep,
    load_graph,
    save_graph,
)
from .selector import DEFAULT_M, Mode, SelectorConfig
from .simulate import (
    SynthParams,
    evaluate,
    gen_students,
    gen_synthetic_corpus,
    run_batch,
    write_traces,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def _parse_alphas(raw: str) -> list[float]:
    try:
        return [float(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid alpha list {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="learnext",
        description="Adaptive learning-material assessment and recommendation engine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-corpus", help="generate a synthetic corpus file")
    p.add_argument("--params", help="JSON file overriding generator parameters")
    p.add_argument("--out", required=True, help="output corpus file (JSON lines)")
    p.add_argument("--seed", type=int, help="shortcut override for the RNG seed")

    p = sub.add_parser("build-graph", help="build the partial-ordering graph")
    p.add_argument("--corpus", required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--out", required=True, help="output graph file (JSON)")

    p = sub.add_parser("sweep", help="relation/edge counts over several alphas")
    p.add_argument("--corpus", required=True)
    p.add_argument("--alphas", type=_parse_alphas, default=[1.0, 0.9, 0.8, 0.7, 0.6])
    p.add_argument("--out", required=True, help="output CSV file")

    p = sub.add_parser("simulate", help="run simulated sessions and report")
    p.add_argument("--corpus", required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ADAPTIVE.value)
    p.add_argument("--students", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=DEFAULT_M, help="balance horizon M")
    p.add_argument("--beta", type=float, default=0.8, help="comprehension threshold")
    p.add_argument("--noise", type=float, default=0.0, help="response flip probability")
    p.add_argument("--max-turns", type=int, default=None)
    p.add_argument("--out", required=True, help="output report JSON")
    p.add_argument("--traces", help="optional JSON-lines trace output")

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--graph", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--M", dest="m", type=int, default=DEFAULT_M)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--store", required=True, help="session log directory")

    p = sub.add_parser("stats", help="print corpus summary statistics")
    p.add_argument("--corpus", required=True)

    return parser


def _cmd_gen_corpus(args) -> int:
    overrides = {}
    if args.params:
        raw = json.loads(Path(args.params).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError("params file must hold a JSON object")
        for key in ("length_range", "media_mix", "rate_range"):
            if key in raw:
                raw[key] = tuple(raw[key])
        overrides = raw
    if args.seed is not None:
        overrides["seed"] = args.seed
    params = SynthParams(**overrides)
    corpus = gen_synthetic_corpus(params)
    dump_corpus(corpus, args.out)
    print(f"wrote {len(corpus)} materials to {args.out}")
    return EXIT_OK


def _cmd_build_graph(args) -> int:
    corpus = load_corpus(args.corpus)
    graph = build_graph(corpus, GraphConfig(alpha=args.alpha))
    save_graph(graph, args.out, args.corpus)
    stats = graph.stats()
    print(
        f"alpha={stats['alpha']} nodes={stats['nodes']} "
        f"relation={stats['relation_pairs']} edges={stats['edges']} "
        f"classes={stats['classes']} -> {args.out}"
    )
    return EXIT_OK


def _cmd_sweep(args) -> int:
    corpus = load_corpus(args.corpus)
    rows = density_sweep(corpus, args.alphas)
    with open(args.out, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(
            handle, fieldnames=["alpha", "relation_count", "edge_count", "class_count"]
        )
        writer.writeheader()
        writer.writerows(rows)
    for row in rows:
        print(
            f"alpha={row['alpha']}: relation={row['relation_count']} "
            f"edges={row['edge_count']} classes={row['class_count']}"
        )
    return EXIT_OK


def _cmd_simulate(args) -> int:
    corpus = load_corpus(args.corpus)
    graph = build_graph(corpus, GraphConfig(alpha=args.alpha))
    students = gen_students(
        corpus, args.students, seed=args.seed, beta=args.beta, noise=args.noise
    )
    config = SelectorConfig(mode=Mode(args.mode), m=args.m, seed=args.seed)
    max_turns = args.max_turns if args.max_turns is not None else len(corpus)
    traces = run_batch(graph, corpus, students, config, max_turns)
    report = evaluate(traces)[config.mode.value]
    Path(args.out).write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    if args.traces:
        write_traces(traces, args.traces)
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    corpus = load_corpus(args.corpus)
    graph = load_graph(args.graph, corpus, args.corpus)
    app = create_app(graph, corpus, args.store, default_m=args.m)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _cmd_stats(args) -> int:
    corpus = load_corpus(args.corpus)
    print(json.dumps(concept_stats(corpus), indent=2, sort_keys=True))
    return EXIT_OK


_COMMANDS = {
    "gen-corpus": _cmd_gen_corpus,
    "build-graph": _cmd_build_graph,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
    "stats": _cmd_stats,
}


def cli_dispatch(argv: list[str]) -> int:
    """Parse and run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 on --help
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (CorpusError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
