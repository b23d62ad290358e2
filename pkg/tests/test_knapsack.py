from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knapqaoa import (
    ExactSolution,
    KnapsackInstance,
    ParseError,
    ResourceLimitError,
    generate_random_instance,
    is_feasible,
    lazy_greedy,
    objective_value,
    parse_instance,
    selection_weight,
    solve_exact_dp,
    sort_by_quality,
    very_greedy,
    write_instance,
)
from knapqaoa.knapsack import bitstring_to_int, int_to_bitstring
from strategies import instances


def bruteforce_best(inst: KnapsackInstance) -> ExactSolution:
    """Exhaustive reference solver, usable up to n around 15."""
    best, witness = 0, "0" * inst.n
    for value in range(2 ** inst.n):
        x = int_to_bitstring(value, inst.n)
        if is_feasible(inst, x):
            profit = objective_value(inst, x)
            if profit > best:
                best, witness = profit, x
    return ExactSolution(best, witness)


class TestInstanceValidation:
    def test_rejects_nonpositive_profit(self):
        with pytest.raises(ValueError):
            KnapsackInstance((0, 1), (1, 1), 2)

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(ValueError):
            KnapsackInstance((1, 1), (1, 0), 2)

    def test_rejects_nonpositive_capacity(self):
        with pytest.raises(ValueError):
            KnapsackInstance((1,), (1,), 0)

    def test_rejects_empty_item_list(self):
        with pytest.raises(ValueError):
            KnapsackInstance((), (), 3)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            KnapsackInstance((1, 2), (1,), 3)

    def test_trivial_flag(self):
        assert KnapsackInstance((5,), (9,), 4).is_trivial
        assert not KnapsackInstance((5,), (4,), 4).is_trivial

    def test_totals(self, i1):
        assert i1.n == 3
        assert i1.total_profit == 7
        assert i1.total_weight == 6

    def test_quality_is_exact(self, i1):
        assert i1.quality(0) == Fraction(4, 3)
        assert i1.quality(1) == Fraction(1)
        assert i1.quality(2) == Fraction(1)


class TestBitstrings:
    def test_round_trip(self):
        assert int_to_bitstring(4, 3) == "100"
        assert bitstring_to_int("100") == 4
        assert int_to_bitstring(0, 2) == "00"

    def test_objective_examples(self, i1):
        assert objective_value(i1, "000") == 0
        assert objective_value(i1, "100") == 4
        assert objective_value(i1, "011") == 3

    def test_objective_rejects_length_mismatch(self, i1):
        with pytest.raises(ValueError):
            objective_value(i1, "0101")

    def test_feasibility_examples(self, i1):
        assert is_feasible(i1, "011")
        assert not is_feasible(i1, "101")
        assert is_feasible(i1, "000")

    def test_selection_weight(self, i1):
        assert selection_weight(i1, "011") == 3
        assert selection_weight(i1, "101") == 4


class TestSortByQuality:
    def test_i1_order(self, i1):
        assert sort_by_quality(i1) == [0, 1, 2]

    def test_all_equal_is_identity(self):
        inst = KnapsackInstance((3, 3, 3), (2, 2, 2), 4)
        assert sort_by_quality(inst) == [0, 1, 2]

    def test_two_item_example(self):
        inst = KnapsackInstance((1, 6), (2, 3), 4)
        assert sort_by_quality(inst) == [1, 0]

    def test_exact_rational_comparison(self):
        # the two ratios collide in double precision; only exact
        # cross-multiplication ranks the second item first
        big = 10 ** 15
        inst = KnapsackInstance((big + 1, big), (big, big - 1), big)
        assert float(inst.quality(0)) == float(inst.quality(1))
        assert inst.quality(1) > inst.quality(0)
        assert sort_by_quality(inst) == [1, 0]

    @given(instances())
    def test_permutation_with_nonincreasing_quality(self, inst):
        order = sort_by_quality(inst)
        assert sorted(order) == list(range(inst.n))
        qualities = [inst.quality(m) for m in order]
        assert all(a >= b for a, b in zip(qualities, qualities[1:]))


class TestGreedy:
    def test_lazy_on_i1(self, i1):
        res = lazy_greedy(i1)
        assert res.selection == "100"
        assert res.total_profit == 4
        assert res.total_weight == 3
        assert res.r_stop == Fraction(1)

    def test_lazy_all_fit(self):
        inst = KnapsackInstance((2, 3), (1, 1), 5)
        res = lazy_greedy(inst)
        assert res.selection == "11"
        assert res.r_stop is None

    def test_lazy_stops_at_first_reject(self):
        inst = KnapsackInstance((1, 10), (1, 10), 10)
        res = lazy_greedy(inst)
        assert res.selection == "10"
        assert res.total_profit == 1
        assert res.r_stop == Fraction(1)

    def test_very_on_i1(self, i1):
        res = very_greedy(i1)
        assert res.selection == "100"
        assert res.total_profit == 4
        assert res.r_stop == Fraction(1)

    def test_very_skips_and_continues(self):
        inst = KnapsackInstance((6, 5, 5), (3, 2, 2), 4)
        res = very_greedy(inst)
        assert res.selection == "011"
        assert res.total_profit == 10

    @given(instances())
    def test_very_extends_lazy(self, inst):
        lg, vg = lazy_greedy(inst), very_greedy(inst)
        assert vg.total_profit >= lg.total_profit
        assert vg.r_stop == lg.r_stop
        for sel_lg, sel_vg in zip(lg.selection, vg.selection):
            assert sel_vg >= sel_lg

    @given(instances())
    def test_greedy_results_are_consistent(self, inst):
        for res in (lazy_greedy(inst), very_greedy(inst)):
            assert res.total_weight <= inst.capacity
            assert res.total_profit == objective_value(inst, res.selection)
            assert res.total_weight == selection_weight(inst, res.selection)


class TestExactSolver:
    def test_i1(self, i1):
        sol = solve_exact_dp(i1)
        assert sol.optimum == 4
        assert sol.witness == "100"

    def test_single_item(self):
        assert solve_exact_dp(KnapsackInstance((7,), (2,), 3)).optimum == 7

    def test_skip_example(self):
        assert solve_exact_dp(KnapsackInstance((6, 5, 5), (3, 2, 2), 4)).optimum == 10

    def test_cell_budget(self, i1):
        with pytest.raises(ResourceLimitError):
            solve_exact_dp(i1, cell_budget=5)

    @given(instances(max_n=10, max_value=12))
    def test_matches_bruteforce(self, inst):
        sol = solve_exact_dp(inst)
        ref = bruteforce_best(inst)
        assert sol.optimum == ref.optimum
        assert is_feasible(inst, sol.witness)
        assert objective_value(inst, sol.witness) == sol.optimum

    @given(instances())
    def test_dominates_greedy(self, inst):
        opt = solve_exact_dp(inst).optimum
        assert opt >= very_greedy(inst).total_profit >= lazy_greedy(inst).total_profit


class TestInstanceIO:
    def test_parse_example(self):
        inst = parse_instance("3\n1 4 3\n2 2 1\n3 1 1\n3\n")
        assert inst.profits == (4, 2, 1)
        assert inst.weights == (3, 1, 1)
        assert inst.capacity == 3

    def test_parse_accepts_crlf_and_no_trailing_newline(self):
        inst = parse_instance("2\r\n1 5 2\r\n2 3 1\r\n4")
        assert inst.profits == (5, 3)
        assert inst.weights == (2, 1)
        assert inst.capacity == 4

    def test_parse_rejects_zero_items(self):
        with pytest.raises(ParseError):
            parse_instance("0\n")

    def test_parse_rejects_bad_field_count(self):
        with pytest.raises(ParseError) as err:
            parse_instance("2\n1 4\n2 2 1\n3\n")
        assert err.value.line == 2
        assert str(err.value).startswith("line 2:")

    def test_parse_rejects_bad_ids(self):
        with pytest.raises(ParseError):
            parse_instance("2\n1 4 3\n3 2 1\n3\n")

    def test_parse_rejects_missing_capacity(self):
        with pytest.raises(ParseError):
            parse_instance("2\n1 4 3\n2 2 1\n")

    def test_parse_rejects_nonpositive_profit(self):
        with pytest.raises(ParseError):
            parse_instance("1\n1 0 3\n3\n")

    def test_write_format(self, i1):
        assert write_instance(i1) == "3\n1 4 3\n2 2 2\n3 1 1\n3\n"

    def test_round_trip_i1(self, i1):
        parsed = parse_instance(write_instance(i1), name=i1.name)
        assert parsed == i1

    @given(instances())
    def test_round_trip(self, inst):
        assert parse_instance(write_instance(inst), name=inst.name) == inst


class TestGenerator:
    def test_deterministic_per_seed(self):
        a = generate_random_instance(8, seed=3)
        b = generate_random_instance(8, seed=3)
        assert a == b
        assert a != generate_random_instance(8, seed=4)

    def test_full_capacity_ratio_fits_everything(self):
        inst = generate_random_instance(6, capacity_ratio=1.0, seed=1)
        assert inst.capacity == inst.total_weight

    def test_generated_instance_is_valid(self):
        inst = generate_random_instance(20, seed=7)
        assert inst.n == 20
        assert all(v >= 1 for v in inst.profits)
        assert all(w >= 1 for w in inst.weights)
        assert inst.capacity >= 1

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            generate_random_instance(0)
        with pytest.raises(ValueError):
            generate_random_instance(3, max_profit=0)
        with pytest.raises(ValueError):
            generate_random_instance(3, capacity_ratio=0.0)
        with pytest.raises(ValueError):
            generate_random_instance(3, capacity_ratio=1.5)


@given(instances(), st.integers(0, 255))
def test_feasibility_matches_weight_sum(inst, raw):
    value = raw % (2 ** inst.n)
    x = int_to_bitstring(value, inst.n)
    total = sum(w for w, bit in zip(inst.weights, x) if bit == "1")
    assert is_feasible(inst, x) == (total <= inst.capacity)
    assert selection_weight(inst, x) == total
