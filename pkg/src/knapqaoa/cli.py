"""Command line front end.

Subcommands: bench (run the benchmark and write CSVs), inspect (print the
classical summary of one instance file), cycles (resource-only sweep).
Exit codes: 0 success, 1 usage error, 2 instance parse error, 3 nothing
could be produced within the size budgets.
"""

from __future__ import annotations

import argparse
import logging
import pathlib
import sys

from .bench import ExperimentSpec, inspect_summary, run_benchmark, write_benchmark_outputs
from .errors import ParseError, ResourceLimitError
from .knapsack import generate_random_instance, read_instance_file
from .resources import copula_cycles, qtg_cycles, reports_to_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; this package uses 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def generation_seed(base: int, n: int, index: int) -> int:
    """Seed of the index-th generated instance with n items."""
    return base + 1009 * n + index


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knapqaoa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", parents=[], help="run the benchmark and write CSVs")
    source = bench.add_mutually_exclusive_group(required=True)
    source.add_argument("--instances", metavar="DIR", help="directory of instance files")
    source.add_argument("--generate", type=_int_list, metavar="N_LIST", help="generate random instances with these item counts")
    bench.add_argument("--count", type=int, default=10, help="generated instances per item count (default 10)")
    bench.add_argument("--engine", choices=("qtg", "copula", "both"), default="both")
    bench.add_argument("--q", type=_int_list, default=(1, 2, 3), metavar="LIST", help="circuit depths, e.g. 1,2,3")
    bench.add_argument("--k", type=float, default=1.0, help="logistic steepness of the copula warm start")
    bench.add_argument("--grid", type=int, default=50, help="grid points per angle axis")
    bench.add_argument("--local-evals", type=int, default=2000, help="local refiner evaluation cap")
    bench.add_argument("--out", default="bench-out", metavar="DIR")
    bench.add_argument("--seed", type=int, default=0, help="base seed for generated instances")
    bench.add_argument("--max-profit", type=int, default=100)
    bench.add_argument("--max-weight", type=int, default=100)
    bench.add_argument("--capacity-ratio", type=float, default=0.5)
    bench.set_defaults(func=_cmd_bench)

    inspect = sub.add_parser("inspect", help="print the classical summary of one instance")
    inspect.add_argument("file")
    inspect.set_defaults(func=_cmd_inspect)

    cycles = sub.add_parser("cycles", help="cycle-count sweep without any simulation")
    cycles.add_argument("--n", type=_int_list, required=True, metavar="LIST")
    cycles.add_argument("--q", type=_int_list, default=(1,), metavar="LIST")
    cycles.add_argument("--seed", type=int, default=0)
    cycles.add_argument("--max-profit", type=int, default=100)
    cycles.add_argument("--max-weight", type=int, default=100)
    cycles.add_argument("--capacity-ratio", type=float, default=0.5)
    cycles.add_argument("--out", default="-", help="output file, - for stdout (default)")
    cycles.set_defaults(func=_cmd_cycles)
    return parser


def _load_instances(directory: str):
    root = pathlib.Path(directory)
    if not root.is_dir():
        raise ParseError(f"not a directory: {directory}")
    files = sorted(p for p in root.iterdir() if p.is_file())
    if not files:
        raise ParseError(f"no instance files in {directory}")
    return tuple(read_instance_file(p) for p in files)


def _cmd_bench(args) -> int:
    if args.instances is not None:
        instances = _load_instances(args.instances)
    else:
        instances = tuple(
            generate_random_instance(
                n,
                max_profit=args.max_profit,
                max_weight=args.max_weight,
                capacity_ratio=args.capacity_ratio,
                seed=generation_seed(args.seed, n, i),
            )
            for n in args.generate
            for i in range(args.count)
        )
    engines = ("qtg", "copula") if args.engine == "both" else (args.engine,)
    spec = ExperimentSpec(
        instances=instances,
        engines=engines,
        q_values=args.q,
        k=args.k,
        grid_points=args.grid,
        local_max_evals=args.local_evals,
    )
    rows = run_benchmark(spec)
    if not rows:
        print("no rows produced: every combination exceeded a budget", file=sys.stderr)
        return EXIT_BUDGET
    for path in write_benchmark_outputs(rows, args.out):
        print(path)
    print(f"{len(rows)} rows over {len(instances)} instances")
    return EXIT_OK


def _cmd_inspect(args) -> int:
    path = pathlib.Path(args.file)
    if not path.is_file():
        raise ParseError(f"no such instance file: {args.file}")
    sys.stdout.write(inspect_summary(read_instance_file(path)))
    return EXIT_OK


def _cmd_cycles(args) -> int:
    reports = []
    for n in sorted(set(args.n)):
        inst = generate_random_instance(
            n,
            max_profit=args.max_profit,
            max_weight=args.max_weight,
            capacity_ratio=args.capacity_ratio,
            seed=generation_seed(args.seed, n, 0),
        )
        for q in sorted(set(args.q)):
            if n >= 2:
                reports.append(copula_cycles(n, q))
            reports.append(qtg_cycles(inst, q))
    reports.sort(key=lambda r: (r.variant, r.n, r.q))
    text = reports_to_csv(reports)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        pathlib.Path(args.out).write_text(text, encoding="ascii")
        print(args.out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
