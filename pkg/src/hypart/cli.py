"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse or configuration
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .budget import Budget
from .decomp import exact_min_partition
from .errors import BudgetExceeded, ConfigError, HypartError, ParseError, VerificationError
from .experiment import METHODS, check_method, check_prefix_bound, decompose, run_experiment, write_csv
from .hypercore import verify_partition
from .io import format_hypergraph, format_partition, read_hypergraph, read_partition
from .randmodel import SampleConfig, sample_hypergraph
from .turan import turan_number_exact

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _budget(args) -> Budget:
    return Budget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)


def _add_budget(p: argparse.ArgumentParser, nodes: int, seconds: float) -> None:
    p.add_argument("--max-nodes", type=int, default=nodes, help="node-expansion cap")
    p.add_argument("--max-seconds", type=float, default=seconds, help="wall-clock cap")


def cmd_gen(args) -> int:
    H = sample_hypergraph(SampleConfig(args.n, args.r, args.p, args.seed, args.trial))
    _emit(format_hypergraph(H), args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    H = read_hypergraph(args.graph)
    if args.method != "exact":
        check_method(H.n, H.r, 1, args.method)
    part, q, exact = decompose(H, args.method, _budget(args))
    report = verify_partition(H, part)
    _emit(format_partition(part, H), args.out)
    print(f"blocks={part.block_count} q_bound={q} exact={str(exact).lower()}",
          file=sys.stderr)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_exact(args) -> int:
    H = read_hypergraph(args.graph)
    mode = "nontrivial_only" if args.nontrivial_only else "all_blocks"
    res = exact_min_partition(H, mode, _budget(args))
    summary = {"value": res.value, "status": res.status,
               "nodes_expanded": res.nodes_expanded, "lower_bound": res.lower_bound}
    if res.partition is not None and args.out:
        _emit(format_partition(res.partition, H), args.out)
    print(json.dumps(summary))
    return EXIT_OK


def cmd_turan(args) -> int:
    try:
        res = turan_number_exact(args.n, args.uniformity, args.clique, _budget(args))
    except BudgetExceeded as exc:
        res = exc.best
    print(json.dumps({
        "n": res.n, "uniformity": res.s, "clique": res.t, "ex": res.ex_value,
        "exact": res.exact, "maximal": res.maximal, "nodes": res.nodes,
        "witness": [list(e) for e in res.witness.sorted_edges],
    }))
    return EXIT_OK


def cmd_verify(args) -> int:
    H = read_hypergraph(args.graph)
    part = read_partition(args.partition)
    report = verify_partition(H, part)
    print(json.dumps({
        "valid": report.valid,
        "violations": [{"kind": v.kind, "witness": v.witness} for v in report.violations],
    }))
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_experiment(args) -> int:
    records = run_experiment(args.n, args.r, args.p, args.trials, args.seed, args.method,
                             workers=args.workers, zero_runtime=args.zero_runtime)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK


def cmd_check_prefix_bound(args) -> int:
    report = check_prefix_bound(args.n, args.r, args.p, args.seed, args.samples)
    print(json.dumps(report.to_dict()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypart",
        description="Partition uniform hypergraphs into complete r-partite blocks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a random hypergraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", required=True, help="edge probability, decimal or a/b")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="decompose a hypergraph file")
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--out")
    _add_budget(p, 10**7, 60.0)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("exact", help="minimum partition by branch and bound")
    p.add_argument("graph")
    p.add_argument("--nontrivial-only", action="store_true")
    p.add_argument("--out", help="write the optimal partition document here")
    _add_budget(p, 10**7, 60.0)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("turan", help="exact Turán number by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--uniformity", type=int, required=True)
    p.add_argument("--clique", type=int, required=True)
    _add_budget(p, 10**8, 600.0)
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("verify", help="verify a partition document against a hypergraph")
    p.add_argument("graph")
    p.add_argument("partition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="run seeded trials and emit CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--zero-runtime", action="store_true",
                   help="write 0 in the runtime column so output is byte-stable")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("check-prefix-bound", help="randomized prefix-size check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.set_defaults(func=cmd_check_prefix_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
