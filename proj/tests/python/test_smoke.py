"""Smoke tests for the pagelab extension module."""

import pytest

import pagelab as pl

SPEC = pl.ZipfSpec(universe_m=32, hot_set_size=8, shift_interval=200, length_t=1000)


def test_zipf_generation_is_deterministic():
    a = pl.gen_zipf_trace(SPEC, 42)
    b = pl.gen_zipf_trace(SPEC, 42)
    assert len(a) == 1000
    assert a.requests == b.requests
    assert a.phase_boundaries == [200, 400, 600, 800]
    assert all(0 <= r < 32 for r in a.requests)


def test_belady_dominates_online_policies():
    trace = pl.gen_zipf_trace(SPEC, 42)
    opt = pl.simulate(trace, "belady", 4)
    for policy in ("lru", "lfu", "fifo", "random"):
        assert opt.faults_total <= pl.simulate(trace, policy, 4, seed=1).faults_total
    assert opt.fault_rate() == opt.faults_total / 1000.0


def test_perturbation_is_exact():
    base = pl.gen_zipf_trace(SPEC, 7)
    perturbed = pl.perturb_trace(base, 0.1, 3)
    assert perturbed.hamming_d == 100
    assert pl.hamming_distance(base, perturbed.trace) == 100


def test_adversarial_ratio_approaches_capacity():
    trace = pl.gen_adversarial_trace(4, 2000)
    f_lru = pl.simulate(trace, "lru", 4).faults_total
    f_opt = pl.simulate(trace, "belady", 4).faults_total
    assert f_lru == 2000
    assert pl.competitive_ratio(f_lru, f_opt) >= 3.2


def test_cost_model_closed_form():
    cost = pl.cost_model(n_tokens=1000, context_k=100, block_b=10, memory_m=1024)
    assert cost.attention_ops == 1e7
    assert cost.retrieval_ops == 1e4
    assert cost.policy_ops == 1e4
    assert cost.total == cost.attention_ops + cost.retrieval_ops + cost.policy_ops


def test_oracles_agree_with_belady():
    trace = pl.make_trace([1, 2, 1, 3, 2], 4)
    assert pl.brute_force_min_faults(trace, 2) == 3
    assert pl.dp_min_faults(trace, 2).min_faults == 3
    assert pl.simulate(trace, "belady", 2).faults_total == 3


def test_bound_checks_are_satisfied():
    reports = pl.check_theorem4("lru", SPEC, [0.0, 0.1, 0.3], 8.0, 8, [42, 43, 44])
    assert all(r.satisfied for r in reports)
    check = pl.check_fault_sensitivity("lru", pl.gen_zipf_trace(SPEC, 42), 0.1, 8, 1)
    assert check.report.satisfied
    assert check.cascade.flips_d == 100


def test_estimate_beta_degenerate_case():
    assert pl.estimate_beta(SPEC, 0.0, ["lru", "fifo"], 8, [42, 43]) == 0.0


def test_tm_bit_flip():
    machine = """
start: s
halt: h
blank: _
s 1 -> s 0 R
s 0 -> s 1 R
s _ -> h _ R
"""
    result = pl.simulate_tm(machine, "101", block_b=4)
    assert result.halted
    assert result.steps == 4
    assert result.tape_trimmed() == "010"
    assert result.attention_ops == 64


def test_errors_translate_to_python_exceptions():
    with pytest.raises(ValueError):
        pl.simulate(pl.make_trace([1, 2], 3), "lru", 0)
    with pytest.raises(ValueError):
        pl.perturb_trace(pl.gen_zipf_trace(SPEC, 1), 1.5, 0)
    with pytest.raises(ValueError):
        pl.simulate(pl.gen_zipf_trace(SPEC, 1), "mru", 4)


def test_trace_serialization_round_trip():
    trace = pl.gen_zipf_trace(SPEC, 5)
    text = pl.trace_to_string(trace)
    parsed = pl.trace_from_string(text)
    assert parsed.requests == trace.requests
    assert parsed.universe_m == trace.universe_m
