"""Run the engine comparison and write the figure CSVs.

Desk-scale defaults finish in a few minutes; pass --sizes and --count to
scale up. The qtg engine runs at depths 1..3 and the copula engine at
depths 1..5, each instance drawn with capacity close to half the total
weight so both greedy baselines leave room to improve.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from knapqaoa import ExperimentSpec, generate_random_instance, run_benchmark, write_benchmark_outputs
from knapqaoa.cli import generation_seed


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="12,14,16", help="comma separated item counts")
    parser.add_argument("--count", type=int, default=5, help="instances per item count")
    parser.add_argument("--seed", type=int, default=0, help="base seed for instance generation")
    parser.add_argument("--k", type=float, default=1.0, help="logistic steepness of the warm start")
    parser.add_argument("--grid", type=int, default=6, help="grid points per angle axis")
    parser.add_argument("--local-evals", type=int, default=30, help="local refiner evaluation cap")
    parser.add_argument("--qtg-depth", type=int, default=3)
    parser.add_argument("--copula-depth", type=int, default=5)
    parser.add_argument("--out", default="figures", help="output directory")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]

    instances = tuple(
        generate_random_instance(
            n,
            capacity_ratio=0.5,
            seed=generation_seed(args.seed, n, i),
            name=f"fig-n{n}-{i}",
        )
        for n in sizes
        for i in range(args.count)
    )
    common = dict(instances=instances, k=args.k, grid_points=args.grid, local_max_evals=args.local_evals)
    qtg_spec = ExperimentSpec(engines=("qtg",), q_values=tuple(range(1, args.qtg_depth + 1)), **common)
    copula_spec = ExperimentSpec(
        engines=("copula",), q_values=tuple(range(1, args.copula_depth + 1)), **common
    )

    started = time.perf_counter()
    rows = run_benchmark(qtg_spec) + run_benchmark(copula_spec)
    rows.sort(key=lambda r: (r.instance, r.engine, r.q))
    paths = write_benchmark_outputs(rows, args.out)
    elapsed = time.perf_counter() - started

    for path in paths:
        print(path)
    print(f"{len(rows)} rows over {len(instances)} instances in {elapsed:.1f} s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
