"""Tree-generated superposition over the feasible packings of a knapsack.

The state is built layer by layer, one item per layer. A node carries the
packing prefix and its accumulated weight acc. At item m the node branches
only when acc <= capacity - w_m, i.e. when the item still fits; the
exclude edge multiplies the amplitude by cos(theta_m / 2), the include
edge by sin(theta_m / 2). A node that cannot branch keeps its amplitude
and excludes the item. Every leaf is a feasible packing, every feasible
packing is reached by exactly one path, and all amplitudes are strictly
positive for branch angles inside (0, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .knapsack import KnapsackInstance, bitstring_to_int, int_to_bitstring

BRUTEFORCE_MAX_N = 25


@dataclass(frozen=True)
class BiasConfig:
    """Branch angles for the tree generator.

    With thetas set, item m uses thetas[m]; otherwise every item uses the
    single angle theta. The default theta = pi/2 puts the factor 1/sqrt(2)
    on both edges of every branching node.
    """

    theta: float = math.pi / 2
    thetas: tuple[float, ...] | None = None

    @classmethod
    def uniform(cls) -> "BiasConfig":
        return cls()

    @classmethod
    def fixed_angle(cls, theta: float) -> "BiasConfig":
        return cls(theta=theta)

    @classmethod
    def per_item(cls, thetas) -> "BiasConfig":
        return cls(thetas=tuple(float(t) for t in thetas))

    def angles(self, n: int) -> np.ndarray:
        if self.thetas is not None:
            if len(self.thetas) != n:
                raise ValueError(f"need {n} angles, got {len(self.thetas)}")
            out = np.asarray(self.thetas, dtype=np.float64)
        else:
            out = np.full(n, float(self.theta))
        if np.any(out <= 0.0) or np.any(out >= math.pi):
            raise ValueError("branch angles must lie strictly inside (0, pi)")
        return out


@dataclass
class FeasibleSuperposition:
    """Amplitudes over all feasible packings, sorted by bitstring value.

    states holds the packings as integers (item 1 is the most significant
    bit), amplitudes the matching positive real amplitudes, profits and
    weights the cached objective value and total weight per packing.
    """

    instance: KnapsackInstance
    states: np.ndarray
    amplitudes: np.ndarray
    profits: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return len(self.states)

    def bitstring(self, position: int) -> str:
        return int_to_bitstring(int(self.states[position]), self.instance.n)

    def position_of(self, x: str) -> int:
        """Index of packing x in the sorted state list, or -1 when absent."""
        value = bitstring_to_int(x)
        if len(x) != self.instance.n:
            raise ValueError(f"bitstring length {len(x)} != n = {self.instance.n}")
        pos = int(np.searchsorted(self.states, value))
        if pos < self.size and self.states[pos] == value:
            return pos
        return -1


def build_superposition(inst: KnapsackInstance, bias: BiasConfig | None = None) -> FeasibleSuperposition:
    """Propagate the branching tree breadth first and collect the leaves.

    Runs in O(n * |S|) time and memory for |S| feasible packings.
    """
    if bias is None:
        bias = BiasConfig.uniform()
    n, c = inst.n, inst.capacity
    thetas = bias.angles(n)
    cos_half = np.cos(thetas / 2.0)
    sin_half = np.sin(thetas / 2.0)

    states = np.zeros(1, dtype=np.int64)
    acc = np.zeros(1, dtype=np.int64)
    amps = np.ones(1, dtype=np.float64)
    profits = np.zeros(1, dtype=np.int64)
    for m in range(n):
        w, v = inst.weights[m], inst.profits[m]
        can_branch = acc <= c - w
        excluded = np.where(can_branch, amps * cos_half[m], amps)
        included = amps[can_branch] * sin_half[m]
        bit = np.int64(1) << (n - 1 - m)
        states = np.concatenate([states, states[can_branch] | bit])
        profits = np.concatenate([profits, profits[can_branch] + v])
        acc = np.concatenate([acc, acc[can_branch] + w])
        amps = np.concatenate([excluded, included])
    order = np.argsort(states)
    return FeasibleSuperposition(
        instance=inst,
        states=states[order],
        amplitudes=amps[order],
        profits=profits[order],
        weights=acc[order],
    )


def amplitude_of(sup: FeasibleSuperposition, x: str) -> float:
    """Amplitude of packing x, 0.0 when x is not in the superposition."""
    pos = sup.position_of(x)
    return float(sup.amplitudes[pos]) if pos >= 0 else 0.0


def enumerate_feasible_bruteforce(inst: KnapsackInstance, max_n: int = BRUTEFORCE_MAX_N) -> np.ndarray:
    """All feasible packings as sorted integers, by exhaustive enumeration.

    Independent of the tree construction; costs O(n * 2^n) and is capped
    at max_n items.
    """
    if inst.n > max_n:
        raise ResourceLimitError(f"brute force enumeration capped at n = {max_n}, got {inst.n}")
    _, weights = profile_all_packings(inst)
    return np.flatnonzero(weights <= inst.capacity).astype(np.int64)


def profile_all_packings(inst: KnapsackInstance) -> tuple[np.ndarray, np.ndarray]:
    """Profit and weight of every one of the 2^n packings.

    Index i encodes the packing with item 1 as the most significant bit.
    """
    n = inst.n
    idx = np.arange(1 << n, dtype=np.int64)
    profits = np.zeros(1 << n, dtype=np.int64)
    weights = np.zeros(1 << n, dtype=np.int64)
    for m in range(n):
        bit = ((idx >> (n - 1 - m)) & 1).astype(np.int64)
        profits += bit * inst.profits[m]
        weights += bit * inst.weights[m]
    return profits, weights


def superposition_to_csv(sup: FeasibleSuperposition) -> str:
    """Debug dump, one row per packing: bitstring,amplitude,profit,weight."""
    lines = ["bitstring,amplitude,profit,weight"]
    n = sup.instance.n
    for i in range(sup.size):
        lines.append(
            f"{int_to_bitstring(int(sup.states[i]), n)},"
            f"{sup.amplitudes[i]:.17g},{sup.profits[i]},{sup.weights[i]}"
        )
    return "\n".join(lines) + "\n"
