"""Benchmark harness: run both engines over an instance set, collect
approximation ratios and cycle counts, and render the figure CSVs.

All outputs are deterministic for a fixed ExperimentSpec. Wall times are
recorded on the rows for logging but never written to CSV.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from .errors import DegenerateInstanceError, ResourceLimitError
from .knapsack import (
    DP_CELL_BUDGET,
    KnapsackInstance,
    lazy_greedy,
    solve_exact_dp,
    very_greedy,
)
from .optimize import OptimizeConfig, layerwise_optimize
from .qaoa import (
    FULL_ENGINE_MAX_N,
    QTG_ENGINE_MAX_N,
    make_engine,
    probability_beat_threshold,
)
from .qtg import build_superposition
from .resources import copula_cycles, qtg_cycles

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentSpec:
    """What to run: instances, engines, depths, and budgets."""

    instances: tuple[KnapsackInstance, ...]
    engines: tuple[str, ...] = ("qtg", "copula")
    q_values: tuple[int, ...] = (1, 2, 3)
    k: float = 1.0
    grid_points: int = 50
    local_max_evals: int = 2000
    local_xtol: float = 1e-6
    qtg_max_n: int = QTG_ENGINE_MAX_N
    copula_max_n: int = FULL_ENGINE_MAX_N
    dp_cell_budget: int = DP_CELL_BUDGET

    def __post_init__(self):
        if not self.instances:
            raise ValueError("need at least one instance")
        for engine in self.engines:
            if engine not in ("qtg", "copula"):
                raise ValueError(f"unknown engine {engine!r}")
        if not self.engines:
            raise ValueError("need at least one engine")
        object.__setattr__(self, "q_values", tuple(sorted(set(int(q) for q in self.q_values))))
        if not self.q_values or self.q_values[0] < 1:
            raise ValueError("q values must be >= 1")


@dataclass(frozen=True)
class BenchmarkRow:
    instance: str
    n: int
    engine: str
    q: int
    f_opt: int
    lg_profit: int
    vg_profit: int
    vg_is_optimal: bool
    value: float
    approx_ratio: float
    p_beat_vg: float
    cycles_total: int
    wall_time_ms: float


def run_benchmark(spec: ExperimentSpec) -> list[BenchmarkRow]:
    """All rows for the spec, sorted by (instance, engine, q).

    An instance or engine that exceeds a budget, or an instance where the
    copula warm start is undefined, is skipped with a log line; the batch
    never aborts. Depths share one layer-by-layer run at max(q): its layer
    i state is exactly the depth-i result, because deeper layers stay at
    the zero angles the schedule starts from.
    """
    rows: list[BenchmarkRow] = []
    cfg = OptimizeConfig(spec.grid_points, spec.local_max_evals, spec.local_xtol)
    q_max = max(spec.q_values)
    for inst in spec.instances:
        try:
            exact = solve_exact_dp(inst, spec.dp_cell_budget)
        except ResourceLimitError as exc:
            logger.info("skipping %s: %s", inst.name, exc)
            continue
        if exact.optimum < 1:
            logger.info("skipping %s: no item fits, ratio undefined", inst.name)
            continue
        greedy_lazy = lazy_greedy(inst)
        greedy_very = very_greedy(inst)
        vg_is_optimal = greedy_very.total_profit == exact.optimum
        for engine_name in spec.engines:
            if engine_name == "copula" and inst.n < 2:
                logger.info("skipping %s/copula: the ring mixer needs n >= 2", inst.name)
                continue
            started = time.perf_counter()
            try:
                engine = make_engine(
                    engine_name,
                    inst,
                    k=spec.k,
                    greedy=greedy_lazy,
                    qtg_max_n=spec.qtg_max_n,
                    copula_max_n=spec.copula_max_n,
                )
            except (ResourceLimitError, DegenerateInstanceError) as exc:
                logger.info("skipping %s/%s: %s", inst.name, engine_name, exc)
                continue
            trace = layerwise_optimize(engine, q_max, cfg)
            block = []
            for q in spec.q_values:
                record = trace.records[q - 1]
                state = engine.run(record.gammas, record.betas)
                p_beat = probability_beat_threshold(state, greedy_very.total_profit)
                if engine_name == "qtg":
                    cycles = qtg_cycles(inst, q).total
                else:
                    cycles = copula_cycles(inst.n, q).total
                block.append((q, record.value_refined, p_beat, cycles))
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            for q, value, p_beat, cycles in block:
                rows.append(
                    BenchmarkRow(
                        instance=inst.name,
                        n=inst.n,
                        engine=engine_name,
                        q=q,
                        f_opt=exact.optimum,
                        lg_profit=greedy_lazy.total_profit,
                        vg_profit=greedy_very.total_profit,
                        vg_is_optimal=vg_is_optimal,
                        value=value,
                        approx_ratio=value / exact.optimum,
                        p_beat_vg=p_beat,
                        cycles_total=cycles,
                        wall_time_ms=elapsed_ms,
                    )
                )
            logger.info(
                "%s/%s: q up to %d done in %.0f ms", inst.name, engine_name, q_max, elapsed_ms
            )
    rows.sort(key=lambda r: (r.instance, r.engine, r.q))
    return rows


def rows_to_csv(rows) -> str:
    lines = [
        "instance,n,engine,q,f_opt,lg_profit,vg_profit,vg_is_optimal,F,approx_ratio,p_beat_vg,cycles_total"
    ]
    for r in rows:
        lines.append(
            f"{r.instance},{r.n},{r.engine},{r.q},{r.f_opt},{r.lg_profit},{r.vg_profit},"
            f"{int(r.vg_is_optimal)},{r.value:.12g},{r.approx_ratio:.12g},"
            f"{r.p_beat_vg:.12g},{r.cycles_total}"
        )
    return "\n".join(lines) + "\n"


def _grouped_mean(rows, value_of) -> list[tuple[str, int, int, int, float]]:
    groups: dict[tuple[str, int, int], list[float]] = {}
    for r in rows:
        groups.setdefault((r.engine, r.q, r.n), []).append(value_of(r))
    out = []
    for (engine, q, n), values in sorted(groups.items()):
        out.append((engine, q, n, len(values), sum(values) / len(values)))
    return out


def report_figures(rows) -> dict[str, str]:
    """The three figure CSVs keyed by file name.

    cycles.csv lists the cycle total per row. ratio.csv and beatvg.csv
    aggregate the mean over instances per (engine, q, n); beatvg.csv drops
    rows whose very greedy packing is already optimal.
    """
    cycle_lines = ["engine,q,instance,n,cycles_total"]
    for r in sorted(rows, key=lambda r: (r.engine, r.q, r.n, r.instance)):
        cycle_lines.append(f"{r.engine},{r.q},{r.instance},{r.n},{r.cycles_total}")

    ratio_lines = ["engine,q,n,instances,mean_approx_ratio"]
    for engine, q, n, count, mean in _grouped_mean(rows, lambda r: r.approx_ratio):
        ratio_lines.append(f"{engine},{q},{n},{count},{mean:.12g}")

    beatable = [r for r in rows if not r.vg_is_optimal]
    beat_lines = ["engine,q,n,instances,mean_p_beat_vg"]
    for engine, q, n, count, mean in _grouped_mean(beatable, lambda r: r.p_beat_vg):
        beat_lines.append(f"{engine},{q},{n},{count},{mean:.12g}")

    return {
        "cycles.csv": "\n".join(cycle_lines) + "\n",
        "ratio.csv": "\n".join(ratio_lines) + "\n",
        "beatvg.csv": "\n".join(beat_lines) + "\n",
    }


def write_benchmark_outputs(rows, out_dir) -> list[str]:
    """Write rows.csv plus the figure CSVs into out_dir; returns the paths."""
    import pathlib

    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"rows.csv": rows_to_csv(rows)}
    files.update(report_figures(rows))
    paths = []
    for name, content in files.items():
        path = out / name
        path.write_text(content, encoding="ascii")
        paths.append(str(path))
    return paths


def inspect_summary(inst: KnapsackInstance, dp_cell_budget: int = DP_CELL_BUDGET) -> str:
    """Human-readable one-instance report."""
    lines = [
        f"instance: {inst.name}",
        f"n: {inst.n}",
        f"capacity: {inst.capacity}",
        f"total_profit: {inst.total_profit}",
        f"total_weight: {inst.total_weight}",
    ]
    try:
        exact = solve_exact_dp(inst, dp_cell_budget)
        lines.append(f"f_opt: {exact.optimum}")
        lines.append(f"witness: {exact.witness}")
    except ResourceLimitError as exc:
        lines.append(f"f_opt: unavailable ({exc})")
    greedy_lazy = lazy_greedy(inst)
    greedy_very = very_greedy(inst)
    lines.append(f"lazy_greedy_profit: {greedy_lazy.total_profit}")
    lines.append(f"lazy_greedy_selection: {greedy_lazy.selection}")
    lines.append(f"very_greedy_profit: {greedy_very.total_profit}")
    lines.append(f"very_greedy_selection: {greedy_very.selection}")
    lines.append(f"r_stop: {greedy_lazy.r_stop if greedy_lazy.r_stop is not None else 'absent'}")
    if inst.n <= QTG_ENGINE_MAX_N:
        sup = build_superposition(inst)
        lines.append(f"feasible_count: {sup.size}")
        lines.append(f"tree_amplitude_min: {sup.amplitudes.min():.12g}")
        lines.append(f"tree_amplitude_max: {sup.amplitudes.max():.12g}")
    else:
        lines.append(f"feasible_count: skipped (n > {QTG_ENGINE_MAX_N})")
    return "\n".join(lines) + "\n"
