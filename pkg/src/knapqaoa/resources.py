"""Logical-cycle accounting for fault-tolerant cost comparisons.

A circuit of depth q costs total = q * (phase + mixer) + state_prep
cycles. Rotation gates count one cycle each; a multi-controlled phase
over b control qubits is a Toffoli cascade worth 2 * numbits(b) + 1
cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .knapsack import KnapsackInstance

R_GATE_CYCLES = 3
TWO_QUBIT_BLOCK_CYCLES = 2 * R_GATE_CYCLES + 1


def numbits(a: int) -> int:
    """Number of bits in the binary representation of a >= 1."""
    a = int(a)
    if a < 1:
        raise ValueError("numbits is defined for integers >= 1")
    return a.bit_length()


@dataclass(frozen=True)
class CycleReport:
    """Cycle counts for one circuit variant at depth q.

    capacity and capacity_bits are 0 for variants without a capacity
    register. The total always satisfies
    total = q * (phase + mixer) + state_prep.
    """

    variant: str
    n: int
    capacity: int
    capacity_bits: int
    q: int
    state_prep: int
    phase: int
    mixer: int
    total: int
    qubit_count: int

    def __post_init__(self):
        expected = self.q * (self.phase + self.mixer) + self.state_prep
        if self.total != expected:
            raise ValueError(f"inconsistent total {self.total}, expected {expected}")


def copula_cycles(n: int, q: int) -> CycleReport:
    """Cycle count of the copula variant.

    The ring of n two-qubit blocks (7 cycles each) runs in two rounds for
    even n and three for odd n, so the mixer costs 14 or 21 cycles. Phase
    separation and state preparation are single parallel rotation rounds.
    """
    if n < 2:
        raise ValueError("the ring mixer needs n >= 2")
    if q < 1:
        raise ValueError("q must be >= 1")
    mixer = TWO_QUBIT_BLOCK_CYCLES * (2 if n % 2 == 0 else 3)
    return CycleReport(
        variant="copula",
        n=n,
        capacity=0,
        capacity_bits=0,
        q=q,
        state_prep=1,
        phase=1,
        mixer=mixer,
        total=q * (1 + mixer) + 1,
        qubit_count=n,
    )


def mcp_cycles(n: int, capacity: int) -> int:
    """Cycles of the multi-controlled phase over the n-item register and the
    capacity register: 2 * numbits(n + numbits(c) - 2) + 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    controls = n + numbits(capacity) - 2
    if controls < 1:
        raise ValueError(f"no control qubits for n = {n}, capacity = {capacity}")
    return 2 * numbits(controls) + 1


@dataclass(frozen=True)
class TreeStateCostModel:
    """Default cycle model for preparing the tree state, version 1.

    Per item layer: a comparison against the remaining capacity as a
    Toffoli cascade over the capacity register (2 * numbits(b - 1) + 1
    cycles for a b-bit register, 1 cycle when b = 1) plus one controlled
    QFT adder on the register (2 * b + 1 cycles). Summed over n layers.
    """

    name: str = "cascade-compare-qft-add"
    version: int = 1

    def __call__(self, inst: KnapsackInstance) -> int:
        bits = numbits(inst.capacity)
        compare = 2 * numbits(bits - 1) + 1 if bits >= 2 else 1
        add = 2 * bits + 1
        return inst.n * (compare + add)


DEFAULT_TREE_COST_MODEL = TreeStateCostModel()


def qtg_cycles(inst: KnapsackInstance, q: int, cost_model=None) -> CycleReport:
    """Cycle count of the qtg variant.

    The mixer unprepares and reprepares the tree state around a
    multi-controlled phase, so mixer = 2 * tree + mcp; state preparation
    is one tree application and the phase separator one rotation round.
    cost_model maps an instance to the tree preparation cycles and
    defaults to DEFAULT_TREE_COST_MODEL.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if cost_model is None:
        cost_model = DEFAULT_TREE_COST_MODEL
    tree = int(cost_model(inst))
    if tree < 0:
        raise ValueError("tree preparation cycles must be >= 0")
    mixer = 2 * tree + mcp_cycles(inst.n, inst.capacity)
    return CycleReport(
        variant="qtg",
        n=inst.n,
        capacity=inst.capacity,
        capacity_bits=numbits(inst.capacity),
        q=q,
        state_prep=tree,
        phase=1,
        mixer=mixer,
        total=q * (1 + mixer) + tree,
        qubit_count=inst.n + numbits(inst.capacity),
    )


def reports_to_csv(reports) -> str:
    """Render cycle reports, one row each: variant,n,c,q,c_SP,c_P,c_M,c_total."""
    lines = ["variant,n,c,q,c_SP,c_P,c_M,c_total"]
    for r in reports:
        lines.append(
            f"{r.variant},{r.n},{r.capacity},{r.q},{r.state_prep},{r.phase},{r.mixer},{r.total}"
        )
    return "\n".join(lines) + "\n"
