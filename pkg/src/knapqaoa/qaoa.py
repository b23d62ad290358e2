"""QAOA circuits for knapsack, simulated at the amplitude level.

Two engines share the phase separator exp(-i * gamma * f(x)) but differ in
state space and mixer:

* The qtg engine works in the feasible subspace spanned by the
  tree-generated superposition |T>. Its mixer is the rank-one reflection
  U_M(beta) |psi> = |psi> - (1 - exp(-i beta)) <T|psi> |T>,
  which never leaves the feasible subspace.

* The copula engine works on the full 2^n statevector. Its initial state
  is a product state from logistic warm-start probabilities, and its mixer
  is a ring of two-qubit blocks R RZ_m(2 beta) RZ_m'(2 beta) R^T, where R
  prepares the bivariate-copula distribution of the pair. Infeasible
  packings keep their raw objective in the phase but count as zero in the
  expectation.

Items are 0-based throughout; item m sits at bit shift n - 1 - m, so the
leftmost character of a bitstring is item 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import phase_inplace, two_qubit_inplace
from .errors import DegenerateInstanceError, ResourceLimitError
from .knapsack import GreedyResult, KnapsackInstance, int_to_bitstring, lazy_greedy
from .qtg import BiasConfig, FeasibleSuperposition, build_superposition, profile_all_packings

QTG_ENGINE_MAX_N = 34
FULL_ENGINE_MAX_N = 24


@dataclass(frozen=True)
class QaoaAngles:
    """Per-layer phase and mixer angles, reduced modulo 2 pi."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) % math.tau for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) % math.tau for b in self.betas))
        if len(self.gammas) != len(self.betas):
            raise ValueError("gammas and betas must have equal length")

    @property
    def q(self) -> int:
        return len(self.gammas)


@dataclass
class StateVector:
    """Amplitudes plus cached per-basis-state data.

    kind "restricted" states live on the feasible packings of sup, in
    sup.states order. kind "full" states have 2^n amplitudes indexed by
    packing value, with a feasibility mask.
    """

    amps: np.ndarray
    objective: np.ndarray
    n: int
    kind: str
    sup: FeasibleSuperposition | None = None
    feasible: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("restricted", "full"):
            raise ValueError(f"unknown state kind {self.kind!r}")
        if self.kind == "restricted" and self.sup is None:
            raise ValueError("restricted states need their superposition")
        if self.kind == "full" and self.feasible is None:
            raise ValueError("full states need a feasibility mask")

    @property
    def size(self) -> int:
        return len(self.amps)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.amps.real, self.amps.real) + np.dot(self.amps.imag, self.amps.imag)))

    def probabilities(self) -> np.ndarray:
        return self.amps.real ** 2 + self.amps.imag ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.amps.copy(), self.objective, self.n, self.kind, self.sup, self.feasible)

    def bitstring(self, position: int) -> str:
        if self.kind == "restricted":
            return self.sup.bitstring(position)
        return int_to_bitstring(position, self.n)


def prepare_qtg_state(sup: FeasibleSuperposition) -> StateVector:
    return StateVector(
        amps=sup.amplitudes.astype(np.complex128),
        objective=sup.profits,
        n=sup.instance.n,
        kind="restricted",
        sup=sup,
    )


def apply_phase_separator(state: StateVector, gamma: float) -> StateVector:
    """Multiply each amplitude by exp(-i * gamma * f(x)).

    The raw objective enters for every basis state, feasible or not.
    """
    out = state.copy()
    phase_inplace(out.amps, state.objective.astype(np.float64), float(gamma))
    return out


def apply_qtg_mixer(state: StateVector, beta: float) -> StateVector:
    """Rank-one mixer: psi - (1 - exp(-i beta)) <T|psi> |T>."""
    if state.kind != "restricted":
        raise ValueError("the qtg mixer acts on restricted states only")
    phi = state.sup.amplitudes.astype(np.complex128)
    inner = np.vdot(phi, state.amps)
    out = state.copy()
    out.amps -= (1.0 - np.exp(-1j * float(beta))) * inner * phi
    return out


def copula_probabilities(
    inst: KnapsackInstance, k: float = 1.0, greedy: GreedyResult | None = None
) -> np.ndarray:
    """Logistic warm-start probability per item.

    p_m = 1 / (1 + W * exp(-k * (r_m - r_stop))) with W = total_weight /
    capacity - 1 and r_stop the stopping quality of the greedy pass.
    Undefined (DegenerateInstanceError) when every item fits: then W <= 0
    and no stopping quality exists.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    if greedy is None:
        greedy = lazy_greedy(inst)
    big_w = inst.total_weight / inst.capacity - 1.0
    if greedy.r_stop is None or big_w <= 0.0:
        raise DegenerateInstanceError(
            f"instance {inst.name}: every item fits, no logistic warm start exists"
        )
    shift = np.array([float(inst.quality(m) - greedy.r_stop) for m in range(inst.n)])
    p = 1.0 / (1.0 + big_w * np.exp(-float(k) * shift))
    # the logistic never reaches 0 or 1 exactly; keep that true under
    # floating-point saturation at large k * shift
    tiny = np.finfo(np.float64).tiny
    return np.clip(p, tiny, 1.0 - np.finfo(np.float64).epsneg)


def conditional_probabilities(p_m: float, p_mp: float) -> tuple[float, float]:
    """Copula conditionals for an item pair with positive correlation.

    Returns (p_mp given item m packed, p_mp given item m not packed). Both
    stay inside [0, 1] for marginals inside [0, 1].
    """
    if not (0.0 <= p_m <= 1.0 and 0.0 <= p_mp <= 1.0):
        raise ValueError("marginals must lie in [0, 1]")
    given = p_mp * (1.0 - (1.0 - p_m) * (1.0 - p_mp))
    given_not = p_mp * (1.0 + p_m * (1.0 - p_mp))
    return given, given_not


def _rotation(p: float) -> tuple[float, float]:
    # cos/sin of half the RY angle 2*asin(sqrt(p))
    return math.sqrt(1.0 - p), math.sqrt(p)


def copula_r_gate(p_m: float, p_mp: float) -> np.ndarray:
    """The real 4x4 gate preparing the pair copula distribution from |00>.

    Composition, rightmost first: RY on the first qubit with angle
    2*asin(sqrt(p_m)), then RY on the second qubit controlled on the
    first, with the conditional probability matching the first bit.
    """
    given, given_not = conditional_probabilities(p_m, p_mp)
    cm, sm = _rotation(p_m)
    cg, sg = _rotation(given)
    cn, sn = _rotation(given_not)
    ry_first = np.array(
        [
            [cm, 0.0, -sm, 0.0],
            [0.0, cm, 0.0, -sm],
            [sm, 0.0, cm, 0.0],
            [0.0, sm, 0.0, cm],
        ]
    )
    controlled = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, cg, -sg],
            [0.0, 0.0, sg, cg],
        ]
    )
    anti_controlled = np.array(
        [
            [cn, -sn, 0.0, 0.0],
            [sn, cn, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    return anti_controlled @ controlled @ ry_first


def copula_pair_unitary(p_m: float, p_mp: float, beta: float) -> np.ndarray:
    """Two-qubit mixer block R RZ(2 beta) RZ(2 beta) R^T as a 4x4 matrix.

    The two RZ factors combine into diag(e^{-2i beta}, 1, 1, e^{2i beta}).
    """
    r = copula_r_gate(p_m, p_mp)
    d = np.array(
        [np.exp(-2j * beta), 1.0, 1.0, np.exp(2j * beta)], dtype=np.complex128
    )
    return (r * d) @ r.T


def prepare_copula_initial_state(
    inst: KnapsackInstance, probs: np.ndarray, max_n: int = FULL_ENGINE_MAX_N
) -> StateVector:
    """Product state with amplitude sqrt(p_m) on packed, sqrt(1 - p_m) on not."""
    n = inst.n
    if n > max_n:
        raise ResourceLimitError(f"full statevector capped at n = {max_n}, got {n}")
    probs = np.asarray(probs, dtype=np.float64)
    if probs.shape != (n,):
        raise ValueError(f"need {n} probabilities, got shape {probs.shape}")
    amps = np.ones(1, dtype=np.complex128)
    for m in range(n):
        amps = np.kron(amps, np.array([math.sqrt(1.0 - probs[m]), math.sqrt(probs[m])]))
    profits, weights = profile_all_packings(inst)
    return StateVector(
        amps=amps,
        objective=profits,
        n=n,
        kind="full",
        feasible=weights <= inst.capacity,
    )


def ring_pairs(n: int) -> list[tuple[int, int]]:
    """Item pairs (m, m + 1) in ascending order, wrapping via (n - 1, 0) last."""
    if n < 2:
        raise ValueError("the ring mixer needs at least two items")
    return [(m, (m + 1) % n) for m in range(n)]


def apply_two_qubit_copula_mixer(
    state: StateVector, m: int, mp: int, p_m: float, p_mp: float, beta: float
) -> StateVector:
    """Apply one two-qubit mixer block to items m and mp of a full state."""
    if state.kind != "full":
        raise ValueError("the copula mixer acts on full states only")
    n = state.n
    if not (0 <= m < n and 0 <= mp < n) or m == mp:
        raise ValueError(f"invalid item pair ({m}, {mp}) for n = {n}")
    u = copula_pair_unitary(p_m, p_mp, float(beta))
    out = state.copy()
    two_qubit_inplace(out.amps, n - 1 - m, n - 1 - mp, u)
    return out


def apply_ring_copula_mixer(state: StateVector, probs: np.ndarray, beta: float) -> StateVector:
    """Apply the two-qubit block to every ring pair, in ascending order."""
    if state.kind != "full":
        raise ValueError("the copula mixer acts on full states only")
    probs = np.asarray(probs, dtype=np.float64)
    n = state.n
    if probs.shape != (n,):
        raise ValueError(f"need {n} probabilities, got shape {probs.shape}")
    out = state.copy()
    for m, mp in ring_pairs(n):
        u = copula_pair_unitary(float(probs[m]), float(probs[mp]), float(beta))
        two_qubit_inplace(out.amps, n - 1 - m, n - 1 - mp, u)
    return out


def expectation(state: StateVector) -> float:
    """Exact expectation of the gated objective f(x) * g(x).

    The feasibility gate g is identically 1 on restricted states.
    """
    p = state.probabilities()
    if state.kind == "restricted":
        weight = state.objective.astype(np.float64)
    else:
        weight = (state.objective * state.feasible).astype(np.float64)
    return float(np.dot(p, weight))


def probability_beat_threshold(state: StateVector, threshold: float) -> float:
    """Total probability of feasible packings with objective strictly above threshold."""
    p = state.probabilities()
    mask = state.objective > threshold
    if state.kind == "full":
        mask &= state.feasible
    return float(p[mask].sum())


def sample_positions(state: StateVector, count: int, seed: int) -> np.ndarray:
    """Measurement outcomes as positions into the state's basis order."""
    if count < 1:
        raise ValueError("count must be >= 1")
    p = state.probabilities()
    cum = np.cumsum(p / p.sum())
    draws = np.random.default_rng(seed).random(count)
    return np.minimum(np.searchsorted(cum, draws, side="right"), len(p) - 1)


def sample_bitstrings(state: StateVector, count: int, seed: int) -> list[str]:
    positions = sample_positions(state, count, seed)
    if state.kind == "restricted":
        values = state.sup.states[positions]
    else:
        values = positions
    return [int_to_bitstring(int(v), state.n) for v in values]


def sampled_expectation(state: StateVector, count: int, seed: int) -> float:
    """Monte Carlo mirror of expectation(); exact evaluation is the default elsewhere."""
    positions = sample_positions(state, count, seed)
    if state.kind == "restricted":
        weight = state.objective.astype(np.float64)
    else:
        weight = (state.objective * state.feasible).astype(np.float64)
    return float(weight[positions].mean())


class QtgEngine:
    """Feasible-subspace circuit runner with cached tree state."""

    name = "qtg"

    def __init__(self, inst: KnapsackInstance, bias: BiasConfig | None = None, max_n: int = QTG_ENGINE_MAX_N):
        if inst.n > max_n:
            raise ResourceLimitError(f"qtg engine capped at n = {max_n}, got {inst.n}")
        self.instance = inst
        self.sup = build_superposition(inst, bias)
        self._phi = self.sup.amplitudes.astype(np.complex128)
        self._objective_f = self.sup.profits.astype(np.float64)

    def initial_state(self) -> StateVector:
        return prepare_qtg_state(self.sup)

    def initial_amps(self) -> np.ndarray:
        return self._phi.copy()

    def step_inplace(self, amps: np.ndarray, gamma: float, beta: float) -> None:
        """One layer; a layer with both angles exactly 0.0 is skipped as identity."""
        if gamma == 0.0 and beta == 0.0:
            return
        phase_inplace(amps, self._objective_f, gamma)
        inner = np.vdot(self._phi, amps)
        amps -= (1.0 - np.exp(-1j * beta)) * inner * self._phi

    def value(self, amps: np.ndarray) -> float:
        return float(np.dot(amps.real ** 2 + amps.imag ** 2, self._objective_f))

    def run(self, gammas, betas) -> StateVector:
        amps = self.initial_amps()
        for gamma, beta in zip(gammas, betas):
            self.step_inplace(amps, float(gamma), float(beta))
        return StateVector(amps, self.sup.profits, self.instance.n, "restricted", sup=self.sup)

    def objective(self, gammas, betas) -> float:
        amps = self.initial_amps()
        for gamma, beta in zip(gammas, betas):
            self.step_inplace(amps, float(gamma), float(beta))
        return self.value(amps)


class CopulaEngine:
    """Full-statevector circuit runner with cached warm start and ring gates."""

    name = "copula"

    def __init__(
        self,
        inst: KnapsackInstance,
        k: float = 1.0,
        greedy: GreedyResult | None = None,
        max_n: int = FULL_ENGINE_MAX_N,
    ):
        if inst.n > max_n:
            raise ResourceLimitError(f"copula engine capped at n = {max_n}, got {inst.n}")
        if inst.n < 2:
            raise ValueError("the ring mixer needs at least two items")
        self.instance = inst
        self.k = float(k)
        self.probs = copula_probabilities(inst, k, greedy)
        initial = prepare_copula_initial_state(inst, self.probs, max_n=max_n)
        self._psi0 = initial.amps
        self._objective_i = initial.objective
        self._feasible = initial.feasible
        self._objective_f = initial.objective.astype(np.float64)
        self._gated_f = (initial.objective * initial.feasible).astype(np.float64)
        n = inst.n
        self._ring = [
            (n - 1 - m, n - 1 - mp, copula_r_gate(float(self.probs[m]), float(self.probs[mp])))
            for m, mp in ring_pairs(n)
        ]

    def initial_state(self) -> StateVector:
        return StateVector(self._psi0.copy(), self._objective_i, self.instance.n, "full", feasible=self._feasible)

    def initial_amps(self) -> np.ndarray:
        return self._psi0.copy()

    def step_inplace(self, amps: np.ndarray, gamma: float, beta: float) -> None:
        """One layer; a layer with both angles exactly 0.0 is skipped as identity."""
        if gamma == 0.0 and beta == 0.0:
            return
        phase_inplace(amps, self._objective_f, gamma)
        d = np.array([np.exp(-2j * beta), 1.0, 1.0, np.exp(2j * beta)], dtype=np.complex128)
        for shift_a, shift_b, r in self._ring:
            u = (r * d) @ r.T
            two_qubit_inplace(amps, shift_a, shift_b, u)

    def value(self, amps: np.ndarray) -> float:
        return float(np.dot(amps.real ** 2 + amps.imag ** 2, self._gated_f))

    def run(self, gammas, betas) -> StateVector:
        amps = self.initial_amps()
        for gamma, beta in zip(gammas, betas):
            self.step_inplace(amps, float(gamma), float(beta))
        return StateVector(amps, self._objective_i, self.instance.n, "full", feasible=self._feasible)

    def objective(self, gammas, betas) -> float:
        amps = self.initial_amps()
        for gamma, beta in zip(gammas, betas):
            self.step_inplace(amps, float(gamma), float(beta))
        return self.value(amps)


ENGINE_NAMES = ("qtg", "copula")


def make_engine(
    engine: str,
    inst: KnapsackInstance,
    bias: BiasConfig | None = None,
    k: float = 1.0,
    greedy: GreedyResult | None = None,
    qtg_max_n: int = QTG_ENGINE_MAX_N,
    copula_max_n: int = FULL_ENGINE_MAX_N,
):
    if engine == "qtg":
        return QtgEngine(inst, bias, max_n=qtg_max_n)
    if engine == "copula":
        return CopulaEngine(inst, k, greedy, max_n=copula_max_n)
    raise ValueError(f"unknown engine {engine!r}, expected one of {ENGINE_NAMES}")


def run_circuit(
    engine: str,
    inst: KnapsackInstance,
    angles: QaoaAngles,
    bias: BiasConfig | None = None,
    k: float = 1.0,
) -> StateVector:
    """Build the requested engine, run all layers, return the final state."""
    return make_engine(engine, inst, bias=bias, k=k).run(angles.gammas, angles.betas)


def state_to_csv(state: StateVector) -> str:
    """Debug dump, one row per basis state: index,re,im,f,g.

    The index column holds the packing value, so restricted and full dumps
    of the same circuit line up row by row on the feasible set.
    """
    lines = ["index,re,im,f,g"]
    for i in range(state.size):
        if state.kind == "restricted":
            index, g = int(state.sup.states[i]), 1
        else:
            index, g = i, int(state.feasible[i])
        lines.append(
            f"{index},{state.amps[i].real:.17g},{state.amps[i].imag:.17g},"
            f"{state.objective[i]},{g}"
        )
    return "\n".join(lines) + "\n"
