"""Shared hypothesis strategies for random knapsack instances."""

import hypothesis
from hypothesis import strategies as st

from knapqaoa import KnapsackInstance


@st.composite
def instances(draw, min_n: int = 1, max_n: int = 8, max_value: int = 20):
    n = draw(st.integers(min_n, max_n))
    profits = tuple(draw(st.lists(st.integers(1, max_value), min_size=n, max_size=n)))
    weights = tuple(draw(st.lists(st.integers(1, max_value), min_size=n, max_size=n)))
    capacity = draw(st.integers(1, sum(weights) + 2))
    return KnapsackInstance(profits, weights, capacity, name="hyp")


@st.composite
def constrained_instances(draw, min_n: int = 2, max_n: int = 8, max_value: int = 20):
    # the logistic warm start needs total weight above capacity
    inst = draw(instances(min_n=min_n, max_n=max_n, max_value=max_value))
    hypothesis.assume(inst.total_weight > inst.capacity)
    return inst
