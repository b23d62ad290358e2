"""QAOA simulators and benchmarks for the 0-1 knapsack problem."""

from .bench import (
    BenchmarkRow,
    ExperimentSpec,
    inspect_summary,
    report_figures,
    rows_to_csv,
    run_benchmark,
    write_benchmark_outputs,
)
from .errors import DegenerateInstanceError, ParseError, ResourceLimitError
from .knapsack import (
    ExactSolution,
    GreedyResult,
    KnapsackInstance,
    generate_random_instance,
    is_feasible,
    lazy_greedy,
    objective_value,
    parse_instance,
    read_instance_file,
    selection_weight,
    solve_exact_dp,
    sort_by_quality,
    very_greedy,
    write_instance,
    write_instance_file,
)
from .optimize import (
    LayerRecord,
    OptimizationTrace,
    OptimizeConfig,
    grid_search_2d,
    layerwise_optimize,
    local_refine,
    trace_to_csv,
)
from .qaoa import (
    CopulaEngine,
    QaoaAngles,
    QtgEngine,
    StateVector,
    apply_phase_separator,
    apply_qtg_mixer,
    apply_ring_copula_mixer,
    apply_two_qubit_copula_mixer,
    conditional_probabilities,
    copula_pair_unitary,
    copula_probabilities,
    expectation,
    make_engine,
    prepare_copula_initial_state,
    prepare_qtg_state,
    probability_beat_threshold,
    run_circuit,
    sample_bitstrings,
    sampled_expectation,
    state_to_csv,
)
from .qtg import (
    BiasConfig,
    FeasibleSuperposition,
    amplitude_of,
    build_superposition,
    enumerate_feasible_bruteforce,
    superposition_to_csv,
)
from .resources import (
    CycleReport,
    DEFAULT_TREE_COST_MODEL,
    TreeStateCostModel,
    copula_cycles,
    mcp_cycles,
    numbits,
    qtg_cycles,
    reports_to_csv,
)

__version__ = "0.1.0"
