"""Command-line interface.

Exit codes:
    0  success
    2  unreadable or invalid input (also bad arguments)
    3  instance is not beta-acyclic (``solve`` only); stdout has the core size
    4  integer overflow (reserved; arithmetic is exact, so this is not expected)
    5  instance too large for the exhaustive oracle

Standard output carries JSON or CSV only; messages go to standard error.
"""
from __future__ import annotations

import argparse
import csv
import sys

from . import io
from .classify import is_alpha_acyclic, is_beta_acyclic
from .core import evaluate
from .instances import RandomModel, from_maxcut, generate, removal_experiment
from .oracle import TooLarge, brute_force_max
from .solver import NotBetaAcyclic, lift_with_sets, reduce, solve

EXIT_OK, EXIT_PARSE, EXIT_NOT_BETA, EXIT_OVERFLOW, EXIT_TOO_LARGE = 0, 2, 3, 4, 5


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    return io.loads(text)


def _write(doc, path: str | None = None) -> None:
    text = io.dumps(doc) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _instance(path: str):
    return io.instance_from_doc(_read(path))


def cmd_solve(args) -> int:
    inst = _instance(args.input)
    try:
        sol = solve(inst)
    except NotBetaAcyclic as exc:
        core = exc.reduced.core.hypergraph
        _write({"error": "not_beta_acyclic", "core_nodes": core.num_nodes,
                "core_edges": core.num_edges, "hint": "reduce"})
        print(f"error: {exc}; run `reduce` to presolve instead", file=sys.stderr)
        return EXIT_NOT_BETA
    _write(io.solution_to_doc(sol))
    return EXIT_OK


def cmd_classify(args) -> int:
    inst = _instance(args.input)
    beta = is_beta_acyclic(inst)
    alpha = is_alpha_acyclic(inst)
    _write({"beta_acyclic": beta.acyclic, "alpha_acyclic": alpha.acyclic,
            "elimination_order": list(beta.elimination_order)})
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = _instance(args.input)
    reduced = reduce(inst)
    _write(io.instance_to_doc(reduced.core), args.core)
    _write(io.trace_to_doc(reduced), args.trace)
    core = reduced.core.hypergraph
    print(f"removed {len(reduced.trace)} of {reduced.original_node_count} nodes; "
          f"core has {core.num_nodes} nodes, {core.num_edges} edges", file=sys.stderr)
    return EXIT_OK


def cmd_lift(args) -> int:
    trace, n = io.trace_from_doc(_read(args.trace))
    core_doc = _read(args.solution)
    bits = io.assignment_from_doc(core_doc)
    try:
        x = lift_with_sets(trace, bits, n)
    except (ValueError, KeyError) as exc:
        raise io.FormatError(f"core solution does not fit the trace: {exc}") from None
    out = {"assignment": [int(b) for b in x]}
    if args.instance:
        out["objective"] = evaluate(_instance(args.instance), x)
    elif "objective" in core_doc:
        out["objective"] = io._int(core_doc["objective"], "objective") + trace.accumulated_offset
    _write(out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _instance(args.input)
    try:
        sol = brute_force_max(inst, args.node_limit)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    _write(io.solution_to_doc(sol))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        model = RandomModel(args.n, args.m, args.seed, (args.pmin, args.pmax))
        inst = generate(model)
    except ValueError as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from None
    _write(io.instance_to_doc(inst), args.output)
    return EXIT_OK


def cmd_maxcut(args) -> int:
    graph = io.graph_from_doc(_read(args.input))
    _write(io.instance_to_doc(from_maxcut(graph)), args.output)
    return EXIT_OK


def _grid(text: str) -> list[tuple[int, int]]:
    cells = []
    for part in text.split(","):
        try:
            n, m = part.split(":")
            cells.append((int(n), int(m)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad grid cell {part!r}; use n:m[,n:m...]") from None
    return cells


def cmd_bench(args) -> int:
    try:
        rows = removal_experiment(args.grid, args.reps, args.seed, (args.pmin, args.pmax))
    except ValueError as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from None
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "m", "mean_removed_pct"])
    for r in rows:
        writer.writerow([r["n"], r["m"], f"{r['mean_removed_pct']:.4f}"])
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Exit(EXIT_PARSE, message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="betabpo", description="Binary polynomial optimisation on beta-acyclic hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="optimal solution of a beta-acyclic instance")
    s.add_argument("input")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("classify", help="beta/alpha acyclicity and an elimination order")
    s.add_argument("input")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reduce", help="remove nest points; write the core and the trace")
    s.add_argument("input")
    s.add_argument("-o", "--core", required=True)
    s.add_argument("-t", "--trace", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("lift", help="extend a core solution through a trace")
    s.add_argument("-t", "--trace", required=True)
    s.add_argument("-s", "--solution", required=True, help="solution document for the core")
    s.add_argument("-i", "--instance", help="original instance, to report the exact objective")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("oracle", help="exhaustive maximum (small instances)")
    s.add_argument("input")
    s.add_argument("--node-limit", type=int, default=20)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="random instance")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-m", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--pmin", type=int, default=-10)
    s.add_argument("--pmax", type=int, default=10)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("maxcut", help="convert a weighted graph to an instance")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_maxcut)

    s = sub.add_parser("bench", help="removed-node percentages on random instances (CSV)")
    s.add_argument("--grid", type=_grid, default=_grid("300:300,300:150,300:75"))
    s.add_argument("--reps", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--pmin", type=int, default=-10)
    s.add_argument("--pmax", type=int, default=10)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except io.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OverflowError as exc:
        print(f"error: integer overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW


if __name__ == "__main__":
    sys.exit(main())
