"""Command-line front end.

Builds or loads a graph, runs one flooding mode, audits a run, or sweeps all
small graphs, always emitting byte-stable JSON. Exit codes partition the
outcomes: 0 success/terminated, 1 property violation, 2 input error, 3 cycle
detected (async), 4 round budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import analysis, async_engine
from .graph import GraphError, gen_named, gen_random, parse_edge_list
from .jsonio import dumps_stable
from .sync_engine import run_sync

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2
EXIT_CYCLE = 3
EXIT_EXHAUSTED = 4

ADVERSARIES = {
    "zero": async_engine.ZeroDelayAdversary,
    "fig6": async_engine.HoldSecondSenderAdversary,
}


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--graph", metavar="FILE",
                     help="edge-list file: 'u v' lines, '#' comments")
    grp.add_argument("--named", metavar="KIND[:P]",
                     help="hypercube:K, petersen, cycle:N, path:N, complete:N")
    grp.add_argument("--random", metavar="N,P,SEED",
                     help="Erdos-Renyi G(n,p); AMNESIA_SEED overrides SEED")


def _load_graph(args):
    if args.graph:
        try:
            text = Path(args.graph).read_text()
        except OSError as exc:
            raise GraphError(f"cannot read {args.graph}: {exc}") from None
        return parse_edge_list(text)
    if args.named:
        kind, _, param = args.named.partition(":")
        if param:
            try:
                return gen_named(kind, int(param))
            except ValueError as exc:
                if isinstance(exc, GraphError):
                    raise
                raise GraphError(f"bad parameter in {args.named!r}") from None
        return gen_named(kind)
    parts = args.random.split(",")
    if len(parts) != 3:
        raise GraphError(f"--random wants N,P,SEED, got {args.random!r}")
    try:
        n, p = int(parts[0]), float(parts[1])
        seed = int(os.environ.get("AMNESIA_SEED", parts[2]))
    except ValueError:
        raise GraphError(f"bad --random value {args.random!r}") from None
    return gen_random(n, p, seed)


def _parse_mode(mode: str) -> tuple[str, str | None, int]:
    if mode == "sync":
        return "sync", None, 0
    if mode.startswith("async:"):
        rest = mode[len("async:"):]
        name, _, cap = rest.partition(",")
        if name not in ADVERSARIES:
            raise GraphError(f"unknown adversary {name!r} "
                             f"(known: {', '.join(sorted(ADVERSARIES))})")
        try:
            return "async", name, int(cap) if cap else 1
        except ValueError:
            raise GraphError(f"bad hold cap in {mode!r}") from None
    raise GraphError(f"unknown mode {mode!r}")


def _emit(out: str | None, obj) -> None:
    text = dumps_stable(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    g = _load_graph(args)
    source = g.resolve(args.source)
    kind, adv_name, hold_cap = _parse_mode(args.mode)
    if kind == "sync":
        trace = run_sync(g, source, args.max_rounds)
        _emit(args.out, trace.to_json_obj())
        return EXIT_OK
    adversary = ADVERSARIES[adv_name]()
    max_rounds = 64 if args.max_rounds is None else args.max_rounds
    verdict = async_engine.run_async(g, source, adversary,
                                     max_rounds=max_rounds, hold_cap=hold_cap)
    _emit(args.out, verdict.to_json_obj())
    return {
        async_engine.OUTCOME_TERMINATED: EXIT_OK,
        async_engine.OUTCOME_CYCLE: EXIT_CYCLE,
        async_engine.OUTCOME_EXHAUSTED: EXIT_EXHAUSTED,
    }[verdict.outcome]


def _cmd_analyze(args) -> int:
    g = _load_graph(args)
    source = g.resolve(args.source)
    report, audit = analysis.analyze(g, source)
    _emit(args.out, {"classification": report.to_json_obj(),
                     "audit": audit.to_json_obj()})
    return EXIT_OK if report.window_ok and audit.all_ok else EXIT_VIOLATION


def _cmd_sweep(args) -> int:
    summary = analysis.sweep(args.n_max, jobs=args.jobs)
    _emit(args.out, summary.to_json_obj())
    return EXIT_OK if not summary.violations else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="amflood",
        description="Simulate and verify amnesiac flooding on finite graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one flooding run, emit the trace")
    _add_graph_args(p_run)
    p_run.add_argument("--source", required=True, help="source node id or label")
    p_run.add_argument("--mode", default="sync",
                       help="sync (default) or async:NAME[,HOLD_CAP]")
    p_run.add_argument("--max-rounds", type=int, default=None,
                       help="round budget (default: 2n+2 sync, 64 async)")
    p_run.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p_run.set_defaults(func=_cmd_run)

    p_an = sub.add_parser("analyze",
                          help="classify a run and audit its trace")
    _add_graph_args(p_an)
    p_an.add_argument("--source", required=True, help="source node id or label")
    p_an.add_argument("--out", default=None)
    p_an.set_defaults(func=_cmd_analyze)

    p_sw = sub.add_parser("sweep",
                          help="verify every small connected graph exhaustively")
    p_sw.add_argument("--n-max", type=int, required=True, help="largest node count (<= 7)")
    p_sw.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_sw.add_argument("--out", default=None)
    p_sw.set_defaults(func=_cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        print(f"amflood: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except async_engine.UnfairScheduleError as exc:
        print(f"amflood: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        print(f"amflood: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
