"""Classical side of the 0-1 knapsack problem.

Instances, greedy baselines, an exact dynamic-programming solver, the
plain-text instance file format, and a reproducible random generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParseError, ResourceLimitError

DP_CELL_BUDGET = 1_000_000_000


@dataclass(frozen=True)
class KnapsackInstance:
    """A 0-1 knapsack instance with positive integer data.

    Bitstrings have one character per item, item 1 first, '1' meaning the
    item is packed. All profits, weights and the capacity are >= 1.
    """

    profits: tuple[int, ...]
    weights: tuple[int, ...]
    capacity: int
    name: str = "unnamed"

    def __post_init__(self):
        object.__setattr__(self, "profits", tuple(int(v) for v in self.profits))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "capacity", int(self.capacity))
        if len(self.profits) < 1:
            raise ValueError("instance needs at least one item")
        if len(self.profits) != len(self.weights):
            raise ValueError("profits and weights must have equal length")
        if any(v < 1 for v in self.profits):
            raise ValueError("profits must be >= 1")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be >= 1")
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")

    @property
    def n(self) -> int:
        return len(self.profits)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def total_profit(self) -> int:
        return sum(self.profits)

    @property
    def is_trivial(self) -> bool:
        """True when no single item fits, so the empty packing is optimal."""
        return min(self.weights) > self.capacity

    def quality(self, m: int) -> Fraction:
        """Profit-to-weight ratio of item m (0-based), as an exact rational."""
        return Fraction(self.profits[m], self.weights[m])


def bitstring_to_int(x: str) -> int:
    """Map a bitstring (item 1 = leftmost character) to its integer value."""
    if not x or any(ch not in "01" for ch in x):
        raise ValueError(f"not a bitstring: {x!r}")
    return int(x, 2)


def int_to_bitstring(value: int, n: int) -> str:
    if value < 0 or value >= 1 << n:
        raise ValueError(f"value {value} out of range for {n} bits")
    return format(value, f"0{n}b")


def _check_bits(inst: KnapsackInstance, x: str) -> None:
    if len(x) != inst.n:
        raise ValueError(f"bitstring length {len(x)} != n = {inst.n}")
    if any(ch not in "01" for ch in x):
        raise ValueError(f"not a bitstring: {x!r}")


def objective_value(inst: KnapsackInstance, x: str) -> int:
    """Total profit of the packing x, feasible or not."""
    _check_bits(inst, x)
    return sum(v for v, ch in zip(inst.profits, x) if ch == "1")


def selection_weight(inst: KnapsackInstance, x: str) -> int:
    """Total weight of the packing x."""
    _check_bits(inst, x)
    return sum(w for w, ch in zip(inst.weights, x) if ch == "1")


def is_feasible(inst: KnapsackInstance, x: str) -> bool:
    return selection_weight(inst, x) <= inst.capacity


def sort_by_quality(inst: KnapsackInstance) -> list[int]:
    """Item indices (0-based) by non-increasing profit-to-weight ratio.

    Ratio comparison is exact rational arithmetic. Ties keep ascending
    item index (stable sort on the negated ratio).
    """
    return sorted(range(inst.n), key=lambda m: -inst.quality(m))


@dataclass(frozen=True)
class GreedyResult:
    """Outcome of a greedy pass.

    r_stop is the profit-to-weight ratio of the first item the pass could
    not fit, walking items in quality order. It is None when every item
    was packed. The first rejected item is the same for the lazy and the
    very greedy pass, so both report the same r_stop.
    """

    selection: str
    total_profit: int
    total_weight: int
    r_stop: Fraction | None


def lazy_greedy(inst: KnapsackInstance) -> GreedyResult:
    """Pack items in quality order and stop at the first one that does not fit."""
    bits = ["0"] * inst.n
    remaining = inst.capacity
    profit = 0
    r_stop = None
    for m in sort_by_quality(inst):
        if inst.weights[m] > remaining:
            r_stop = inst.quality(m)
            break
        bits[m] = "1"
        remaining -= inst.weights[m]
        profit += inst.profits[m]
    return GreedyResult("".join(bits), profit, inst.capacity - remaining, r_stop)


def very_greedy(inst: KnapsackInstance) -> GreedyResult:
    """Pack items in quality order, skipping any item that does not fit.

    The packing is a superset of the lazy greedy packing.
    """
    bits = ["0"] * inst.n
    remaining = inst.capacity
    profit = 0
    r_stop = None
    for m in sort_by_quality(inst):
        if inst.weights[m] > remaining:
            if r_stop is None:
                r_stop = inst.quality(m)
            continue
        bits[m] = "1"
        remaining -= inst.weights[m]
        profit += inst.profits[m]
    return GreedyResult("".join(bits), profit, inst.capacity - remaining, r_stop)


@dataclass(frozen=True)
class ExactSolution:
    optimum: int
    witness: str


def solve_exact_dp(inst: KnapsackInstance, cell_budget: int = DP_CELL_BUDGET) -> ExactSolution:
    """Exact optimum by dynamic programming over capacities 0..c.

    Needs n * (c + 1) table cells; raises ResourceLimitError above the
    budget. The witness prefers excluding an item when both choices give
    equal profit, which makes it deterministic.
    """
    n, c = inst.n, inst.capacity
    cells = n * (c + 1)
    if cells > cell_budget:
        raise ResourceLimitError(
            f"dp table needs {cells} cells, budget is {cell_budget}"
        )
    value = np.zeros(c + 1, dtype=np.int64)
    take = np.zeros((n, c + 1), dtype=bool)
    for m in range(n):
        w, v = inst.weights[m], inst.profits[m]
        if w > c:
            continue
        cand = value.copy()
        cand[w:] = value[: c + 1 - w] + v
        row = cand > value
        take[m] = row
        np.copyto(value, cand, where=row)
    bits = ["0"] * n
    cc = c
    for m in reversed(range(n)):
        if take[m, cc]:
            bits[m] = "1"
            cc -= inst.weights[m]
    return ExactSolution(int(value[c]), "".join(bits))


def parse_instance(text: str | bytes, name: str = "instance") -> KnapsackInstance:
    """Parse the plain-text instance format.

    Line 1 holds the item count n, lines 2..n+1 hold "<id> <profit>
    <weight>" with consecutive 1-based ids, and the final line holds the
    capacity. Tokens are whitespace-delimited decimal integers; LF and
    CRLF both work. ParseError carries the offending 1-based line number.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not a text file: {exc}") from None
    lines = [
        (i + 1, line.split())
        for i, line in enumerate(text.splitlines())
        if line.strip()
    ]
    if not lines:
        raise ParseError("empty instance file")

    def as_int(token: str, lineno: int) -> int:
        try:
            return int(token, 10)
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", lineno) from None

    lineno, tokens = lines[0]
    if len(tokens) != 1:
        raise ParseError(f"expected a single item count, got {len(tokens)} tokens", lineno)
    n = as_int(tokens[0], lineno)
    if n < 1:
        raise ParseError(f"item count must be >= 1, got {n}", lineno)
    if len(lines) != n + 2:
        raise ParseError(
            f"expected {n + 2} non-empty lines for {n} items, got {len(lines)}",
            lines[-1][0],
        )
    profits = []
    weights = []
    for k in range(n):
        lineno, tokens = lines[1 + k]
        if len(tokens) != 3:
            raise ParseError(f"expected 'id profit weight', got {len(tokens)} tokens", lineno)
        item_id = as_int(tokens[0], lineno)
        if item_id != k + 1:
            raise ParseError(f"expected item id {k + 1}, got {item_id}", lineno)
        profits.append(as_int(tokens[1], lineno))
        weights.append(as_int(tokens[2], lineno))
    lineno, tokens = lines[n + 1]
    if len(tokens) != 1:
        raise ParseError(f"expected a single capacity value, got {len(tokens)} tokens", lineno)
    capacity = as_int(tokens[0], lineno)
    try:
        return KnapsackInstance(tuple(profits), tuple(weights), capacity, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_instance(inst: KnapsackInstance) -> str:
    """Render an instance in the plain-text format parsed by parse_instance."""
    lines = [str(inst.n)]
    for m in range(inst.n):
        lines.append(f"{m + 1} {inst.profits[m]} {inst.weights[m]}")
    lines.append(str(inst.capacity))
    return "\n".join(lines) + "\n"


def read_instance_file(path) -> KnapsackInstance:
    import pathlib

    p = pathlib.Path(path)
    return parse_instance(p.read_bytes(), name=p.stem)


def write_instance_file(inst: KnapsackInstance, path) -> None:
    import pathlib

    pathlib.Path(path).write_text(write_instance(inst), encoding="ascii")


def generate_random_instance(
    n: int,
    max_profit: int = 100,
    max_weight: int = 100,
    capacity_ratio: float = 0.5,
    seed: int = 0,
    name: str | None = None,
) -> KnapsackInstance:
    """Draw profits and weights uniformly from [1, max] and set the capacity
    to round(capacity_ratio * total weight), clamped to at least 1.

    The same arguments always produce the same instance.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_profit < 1 or max_weight < 1:
        raise ValueError("max_profit and max_weight must be >= 1")
    if not 0.0 < capacity_ratio <= 1.0:
        raise ValueError("capacity_ratio must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    profits = tuple(int(v) for v in rng.integers(1, max_profit + 1, size=n))
    weights = tuple(int(w) for w in rng.integers(1, max_weight + 1, size=n))
    capacity = max(1, round(capacity_ratio * sum(weights)))
    if name is None:
        name = f"rand-n{n}-s{seed}"
    return KnapsackInstance(profits, weights, capacity, name=name)
