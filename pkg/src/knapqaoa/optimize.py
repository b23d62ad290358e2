"""Angle optimization: 2D grid seeding, bounded local refinement, and the
layer-by-layer schedule.

All routines are deterministic. The local refiner never returns a point
worse than its start, so the per-layer objective trace is non-decreasing:
the next layer's grid contains (0, 0), which reproduces the previous
layer's refined circuit exactly because all-zero layers are skipped as
identities.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .qaoa import QaoaAngles


@dataclass(frozen=True)
class OptimizeConfig:
    """Budgets for one optimization run.

    Angles live in the half-open box [0, 2 pi)^2 per layer; the refiner is
    bounded by the closed box, whose upper edge is periodically equivalent
    to 0.
    """

    grid_points: int = 50
    local_max_evals: int = 2000
    local_xtol: float = 1e-6

    def __post_init__(self):
        if self.grid_points < 2:
            raise ValueError("grid_points must be >= 2")
        if self.local_max_evals < 1:
            raise ValueError("local_max_evals must be >= 1")
        if self.local_xtol <= 0:
            raise ValueError("local_xtol must be positive")


def grid_search_2d(objective, cfg: OptimizeConfig) -> tuple[float, float, float]:
    """Best (gamma, beta, value) over the regular lattice on [0, 2 pi)^2.

    The lattice includes 0 and excludes 2 pi on both axes. Scanning is
    row-major in (gamma, beta) with strict improvement, so ties return the
    lexicographically first argmax.
    """
    lattice = np.linspace(0.0, math.tau, cfg.grid_points, endpoint=False)
    best_value = -math.inf
    best = (0.0, 0.0)
    for gamma in lattice:
        for beta in lattice:
            value = objective(float(gamma), float(beta))
            if value > best_value:
                best_value = value
                best = (float(gamma), float(beta))
    return best[0], best[1], best_value


def local_refine(objective, start, bounds, cfg: OptimizeConfig) -> tuple[np.ndarray, float]:
    """Derivative-free bounded maximization from a start point.

    Powell's coordinate search, capped at local_max_evals objective calls.
    The start point counts as a candidate, so the result is never worse
    than the start, and the returned value is the objective evaluated at
    the returned point.
    """
    start = np.asarray(start, dtype=np.float64)
    value_start = objective(start)
    lower = np.array([b[0] for b in bounds])
    upper = np.array([b[1] for b in bounds])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = minimize(
            lambda x: -objective(x),
            start,
            method="Powell",
            bounds=bounds,
            options={
                "maxfev": cfg.local_max_evals,
                "xtol": cfg.local_xtol,
                "ftol": cfg.local_xtol,
            },
        )
    candidate = np.minimum(np.maximum(np.asarray(result.x, dtype=np.float64), lower), upper)
    value_candidate = objective(candidate)
    # ties keep the start, so a flat objective cannot drift the angles
    if value_candidate > value_start:
        return candidate, float(value_candidate)
    return start, float(value_start)


@dataclass(frozen=True)
class LayerRecord:
    """One layer of the schedule.

    gamma and beta are the grid picks for this layer; gammas and betas are
    the refined angles of all layers up to and including this one.
    """

    layer: int
    gamma: float
    beta: float
    value_grid: float
    value_refined: float
    evals: int
    gammas: tuple[float, ...]
    betas: tuple[float, ...]


@dataclass(frozen=True)
class OptimizationTrace:
    records: tuple[LayerRecord, ...]
    angles: QaoaAngles
    value: float


def trace_to_csv(trace: OptimizationTrace) -> str:
    lines = ["layer,gamma,beta,F_grid,F_refined,evals"]
    for rec in trace.records:
        lines.append(
            f"{rec.layer},{rec.gamma:.12g},{rec.beta:.12g},"
            f"{rec.value_grid:.12g},{rec.value_refined:.12g},{rec.evals}"
        )
    return "\n".join(lines) + "\n"


def layerwise_optimize(engine, q: int, cfg: OptimizeConfig | None = None) -> OptimizationTrace:
    """Optimize q layers one at a time.

    For layer i: freeze layers below i, keep layers above i at zero, seed
    (gamma_i, beta_i) from the 2D grid, then jointly refine layers 1..i.
    The engine must provide initial_amps, step_inplace, value and
    objective; the grid stage reuses the fixed prefix state, so each grid
    point costs a single layer regardless of depth.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if cfg is None:
        cfg = OptimizeConfig()
    gammas = np.zeros(q)
    betas = np.zeros(q)
    records = []
    for i in range(q):
        evals = 0
        prefix = engine.initial_amps()
        for j in range(i):
            engine.step_inplace(prefix, float(gammas[j]), float(betas[j]))

        def layer_objective(gamma, beta):
            nonlocal evals
            evals += 1
            amps = prefix.copy()
            engine.step_inplace(amps, gamma, beta)
            return engine.value(amps)

        gamma_best, beta_best, value_grid = grid_search_2d(layer_objective, cfg)
        gammas[i] = gamma_best
        betas[i] = beta_best

        depth = i + 1

        def joint_objective(vec):
            nonlocal evals
            evals += 1
            full_g = np.zeros(q)
            full_b = np.zeros(q)
            full_g[:depth] = vec[:depth]
            full_b[:depth] = vec[depth:]
            return engine.objective(full_g, full_b)

        start = np.concatenate([gammas[:depth], betas[:depth]])
        refined, value_refined = local_refine(
            joint_objective, start, [(0.0, math.tau)] * (2 * depth), cfg
        )
        gammas[:depth] = refined[:depth]
        betas[:depth] = refined[depth:]
        records.append(
            LayerRecord(
                layer=depth,
                gamma=gamma_best,
                beta=beta_best,
                value_grid=float(value_grid),
                value_refined=float(value_refined),
                evals=evals,
                gammas=tuple(float(g) for g in gammas[:depth]),
                betas=tuple(float(b) for b in betas[:depth]),
            )
        )
    return OptimizationTrace(
        records=tuple(records),
        angles=QaoaAngles(tuple(gammas), tuple(betas)),
        value=records[-1].value_refined,
    )
