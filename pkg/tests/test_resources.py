import pytest
from hypothesis import given
from hypothesis import strategies as st

from knapqaoa import (
    CycleReport,
    DEFAULT_TREE_COST_MODEL,
    KnapsackInstance,
    copula_cycles,
    mcp_cycles,
    numbits,
    qtg_cycles,
    reports_to_csv,
)


class TestNumbits:
    def test_small_values(self):
        assert numbits(1) == 1
        assert numbits(100) == 7

    @given(st.integers(0, 20))
    def test_powers_of_two(self, k):
        assert numbits(2 ** k) == k + 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            numbits(0)


class TestCycleReport:
    def test_rejects_inconsistent_total(self):
        with pytest.raises(ValueError):
            CycleReport("copula", 4, 0, 0, 2, 1, 1, 14, 99, 4)

    def test_accepts_consistent_total(self):
        report = CycleReport("copula", 4, 0, 0, 2, 1, 1, 14, 31, 4)
        assert report.total == 2 * (1 + 14) + 1


class TestCopulaCycles:
    def test_even_example(self):
        report = copula_cycles(10, 5)
        assert report.mixer == 14
        assert report.phase == 1
        assert report.state_prep == 1
        assert report.total == 76

    def test_odd_example(self):
        report = copula_cycles(11, 1)
        assert report.mixer == 21
        assert report.total == 23

    def test_depends_only_on_parity(self):
        even = {copula_cycles(n, 4).total for n in range(2, 41, 2)}
        odd = {copula_cycles(n, 4).total for n in range(3, 41, 2)}
        assert even == {4 * 15 + 1}
        assert odd == {4 * 22 + 1}

    def test_qubit_count(self):
        assert copula_cycles(12, 1).qubit_count == 12

    def test_validation(self):
        with pytest.raises(ValueError):
            copula_cycles(1, 2)
        with pytest.raises(ValueError):
            copula_cycles(4, 0)

    @given(st.integers(2, 40), st.integers(1, 10))
    def test_total_identity(self, n, q):
        report = copula_cycles(n, q)
        assert report.total == q * (report.phase + report.mixer) + report.state_prep


class TestMcpCycles:
    def test_examples(self):
        assert mcp_cycles(10, 100) == 9
        assert mcp_cycles(2, 1) == 3

    def test_degenerate_single_qubit(self):
        with pytest.raises(ValueError):
            mcp_cycles(1, 1)

    @given(st.integers(2, 64), st.integers(1, 10 ** 6))
    def test_monotone_in_n(self, n, capacity):
        assert mcp_cycles(n + 1, capacity) >= mcp_cycles(n, capacity)


class TestQtgCycles:
    def test_identity_cost_model(self, i1):
        report = qtg_cycles(i1, 3, cost_model=lambda inst: 0)
        mcp = mcp_cycles(i1.n, i1.capacity)
        assert report.state_prep == 0
        assert report.mixer == mcp
        assert report.total == 3 * (1 + mcp)

    def test_default_model_terms(self, i1):
        tree = DEFAULT_TREE_COST_MODEL(i1)
        report = qtg_cycles(i1, 1)
        mcp = mcp_cycles(i1.n, i1.capacity)
        assert report.state_prep == tree
        assert report.phase == 1
        assert report.mixer == 2 * tree + mcp
        assert report.total == 3 * tree + mcp + 1

    def test_default_model_value(self, i1):
        # capacity 3 has 2 bits: compare cascade 3 cycles, adder 5 cycles,
        # times 3 item layers
        assert DEFAULT_TREE_COST_MODEL(i1) == 24

    def test_default_model_single_bit_register(self):
        inst = KnapsackInstance((2, 3), (1, 1), 1)
        assert DEFAULT_TREE_COST_MODEL(inst) == 2 * (1 + 3)

    def test_qubit_count(self, i1):
        assert qtg_cycles(i1, 1).qubit_count == i1.n + numbits(i1.capacity)

    @given(st.integers(1, 10))
    def test_affine_in_depth(self, q):
        inst = KnapsackInstance((3, 1, 4, 1), (2, 7, 1, 8), 9)
        base = qtg_cycles(inst, 1)
        report = qtg_cycles(inst, q)
        slope = base.phase + base.mixer
        assert report.total == base.state_prep + q * slope

    def test_model_is_named_and_versioned(self):
        assert DEFAULT_TREE_COST_MODEL.name == "cascade-compare-qft-add"
        assert DEFAULT_TREE_COST_MODEL.version == 1


def test_reports_csv(i1):
    csv = reports_to_csv([copula_cycles(10, 5), qtg_cycles(i1, 1)])
    lines = csv.splitlines()
    assert lines[0] == "variant,n,c,q,c_SP,c_P,c_M,c_total"
    assert lines[1] == "copula,10,0,5,1,1,14,76"
    tree = DEFAULT_TREE_COST_MODEL(i1)
    mcp = mcp_cycles(3, 3)
    assert lines[2] == f"qtg,3,3,1,{tree},1,{2 * tree + mcp},{3 * tree + mcp + 1}"
