"""Deterministic paging-simulation laboratory.

Thin Python surface over the C++ core: trace generators, cache policy
simulation with an offline-optimal baseline, exact tiny-instance oracles,
bound checks, and a blocked-tape Turing machine simulator.
"""

from ._core import (
    BoundReport,
    CascadeReport,
    CostBreakdown,
    DpResult,
    PerturbedTrace,
    RecallCheck,
    SensitivityCheck,
    SimResult,
    SummaryStats,
    TmRunResult,
    Trace,
    ZipfSpec,
    brute_force_min_faults,
    check_fault_sensitivity,
    check_lower_bound,
    check_noisy_belady,
    check_recall_bound,
    check_theorem4,
    competitive_ratio,
    cost_model,
    dp_min_faults,
    estimate_beta,
    gen_adversarial_trace,
    gen_coupled_trace,
    gen_zipf_trace,
    hamming_distance,
    is_thrashing,
    make_trace,
    perturb_trace,
    simulate,
    simulate_tm,
    summarize,
    trace_from_string,
    trace_to_string,
    working_set_series,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
