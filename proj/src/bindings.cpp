#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pagelab/bounds.hpp"
#include "pagelab/experiment.hpp"
#include "pagelab/oracle.hpp"
#include "pagelab/sim.hpp"
#include "pagelab/tm.hpp"
#include "pagelab/trace.hpp"

namespace py = pybind11;
using namespace pagelab;

namespace {

PolicyKind policy_arg(const std::string& name) { return parse_policy(name); }

std::vector<PolicyKind> policy_list(const std::vector<std::string>& names) {
  std::vector<PolicyKind> kinds;
  kinds.reserve(names.size());
  for (const auto& n : names) kinds.push_back(parse_policy(n));
  return kinds;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic paging simulation laboratory (C++ core)";

  py::class_<Trace>(m, "Trace")
      .def(py::init<>())
      .def_readwrite("requests", &Trace::requests)
      .def_readonly("universe_m", &Trace::universe_m)
      .def_readonly("phase_boundaries", &Trace::phase_boundaries)
      .def_readonly("kind", &Trace::kind)
      .def_readonly("seed", &Trace::seed)
      .def("__len__", &Trace::length)
      .def("__repr__", [](const Trace& t) {
        std::ostringstream s;
        s << "Trace(kind=" << t.kind << ", M=" << t.universe_m << ", T=" << t.length() << ")";
        return s.str();
      });

  py::class_<ZipfSpec>(m, "ZipfSpec")
      .def(py::init([](std::uint32_t universe_m, double exponent_alpha,
                       std::uint32_t hot_set_size, std::size_t shift_interval,
                       std::size_t length_t) {
             ZipfSpec spec{universe_m, exponent_alpha, hot_set_size, shift_interval, length_t};
             validate_spec(spec);
             return spec;
           }),
           py::arg("universe_m") = 64, py::arg("exponent_alpha") = 1.2,
           py::arg("hot_set_size") = 16, py::arg("shift_interval") = 500,
           py::arg("length_t") = 5000)
      .def_readonly("universe_m", &ZipfSpec::universe_m)
      .def_readonly("exponent_alpha", &ZipfSpec::exponent_alpha)
      .def_readonly("hot_set_size", &ZipfSpec::hot_set_size)
      .def_readonly("shift_interval", &ZipfSpec::shift_interval)
      .def_readonly("length_t", &ZipfSpec::length_t);

  py::class_<PerturbedTrace>(m, "PerturbedTrace")
      .def_readonly("trace", &PerturbedTrace::trace)
      .def_readonly("hamming_d", &PerturbedTrace::hamming_d)
      .def_readonly("flipped_positions", &PerturbedTrace::flipped_positions);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("faults_total", &SimResult::faults_total)
      .def_readonly("fault_indicator", &SimResult::fault_indicator)
      .def_readonly("eviction_log", &SimResult::eviction_log)
      .def_readonly("k_b", &SimResult::k_b)
      .def_readonly("seed", &SimResult::seed)
      .def_property_readonly("policy",
                             [](const SimResult& r) { return to_string(r.policy); })
      .def("fault_rate",
           [](const SimResult& r) { return fault_rate(r, r.fault_indicator.size()); });

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("attention_ops", &CostBreakdown::attention_ops)
      .def_readonly("retrieval_ops", &CostBreakdown::retrieval_ops)
      .def_readonly("policy_ops", &CostBreakdown::policy_ops)
      .def_readonly("total", &CostBreakdown::total);

  py::class_<SummaryStats>(m, "SummaryStats")
      .def_readonly("mean", &SummaryStats::mean)
      .def_readonly("sd", &SummaryStats::sd)
      .def_readonly("n_seeds", &SummaryStats::n_seeds)
      .def_readonly("per_seed", &SummaryStats::per_seed);

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("bound", [](const BoundReport& r) { return to_string(r.bound); })
      .def_readonly("policy", &BoundReport::policy)
      .def_readonly("k_b", &BoundReport::k_b)
      .def_readonly("beta", &BoundReport::beta)
      .def_readonly("rho", &BoundReport::rho)
      .def_readonly("p", &BoundReport::p)
      .def_readonly("c", &BoundReport::c)
      .def_readonly("d_f", &BoundReport::d_f)
      .def_readonly("bound_value", &BoundReport::bound_value)
      .def_readonly("empirical_value", &BoundReport::empirical_value)
      .def_readonly("satisfied", &BoundReport::satisfied)
      .def_readonly("slack", &BoundReport::slack)
      .def_readonly("seed_count", &BoundReport::seed_count)
      .def_readonly("hard", &BoundReport::hard)
      .def("csv_row", &bound_csv_row);

  py::class_<CascadeReport>(m, "CascadeReport")
      .def_readonly("beta", &CascadeReport::beta)
      .def_readonly("empirical_diff", &CascadeReport::empirical_diff)
      .def_readonly("flips_d", &CascadeReport::flips_d)
      .def_readonly("cascade_factor", &CascadeReport::cascade_factor);

  py::class_<SensitivityCheck>(m, "SensitivityCheck")
      .def_readonly("report", &SensitivityCheck::report)
      .def_readonly("cascade", &SensitivityCheck::cascade);

  py::class_<RecallCheck>(m, "RecallCheck")
      .def_readonly("corrected", &RecallCheck::corrected)
      .def_readonly("plain", &RecallCheck::plain);

  py::class_<DpResult>(m, "DpResult")
      .def_readonly("min_faults", &DpResult::min_faults)
      .def_readonly("peak_layer_states", &DpResult::peak_layer_states);

  py::class_<TmRunResult>(m, "TmRunResult")
      .def_readonly("halted", &TmRunResult::halted)
      .def_readonly("steps", &TmRunResult::steps)
      .def_readonly("final_state", &TmRunResult::final_state)
      .def_readonly("tape_window", &TmRunResult::tape_window)
      .def_readonly("window_start", &TmRunResult::window_start)
      .def_readonly("attention_ops", &TmRunResult::attention_ops)
      .def_readonly("retrieval_queries", &TmRunResult::retrieval_queries)
      .def("tape_trimmed", &TmRunResult::tape_trimmed, py::arg("blank") = '_');

  // trace generation
  m.def("make_trace", &make_trace, py::arg("requests"), py::arg("universe_m") = 0);
  m.def("gen_zipf_trace", &gen_zipf_trace, py::arg("spec"), py::arg("seed"));
  m.def("perturb_trace", &perturb_trace, py::arg("base"), py::arg("beta"), py::arg("seed"));
  m.def("gen_adversarial_trace", &gen_adversarial_trace, py::arg("k_blocks"),
        py::arg("length_t"));
  m.def(
      "gen_coupled_trace",
      [](const ZipfSpec& spec, double beta_true, const std::string& policy, std::size_t k_b,
         std::uint64_t seed) {
        return gen_coupled_trace(spec, beta_true, policy_arg(policy), k_b, seed);
      },
      py::arg("spec"), py::arg("beta_true"), py::arg("policy"), py::arg("k_b"), py::arg("seed"));
  m.def("hamming_distance", &hamming_distance, py::arg("a"), py::arg("b"));
  m.def("trace_to_string", &trace_to_string, py::arg("trace"));
  m.def(
      "trace_from_string",
      [](const std::string& text) {
        std::istringstream in(text);
        return read_trace(in);
      },
      py::arg("text"));

  // simulation
  m.def(
      "simulate",
      [](const Trace& trace, const std::string& policy, std::size_t k_b, std::uint64_t seed) {
        return simulate(trace, policy_arg(policy), k_b, seed);
      },
      py::arg("trace"), py::arg("policy"), py::arg("k_b"), py::arg("seed") = 0);
  m.def("competitive_ratio", &competitive_ratio, py::arg("f_alg"), py::arg("f_opt"));
  m.def("working_set_series", &working_set_series, py::arg("trace"), py::arg("window"));
  m.def("is_thrashing", &is_thrashing, py::arg("series"), py::arg("k_b"));
  m.def(
      "cost_model",
      [](std::uint64_t n_tokens, std::uint64_t context_k, std::uint64_t block_b,
         std::uint64_t memory_m) {
        return cost_model(CostModelParams{n_tokens, context_k, block_b, memory_m});
      },
      py::arg("n_tokens"), py::arg("context_k"), py::arg("block_b"), py::arg("memory_m"));
  m.def("summarize", &summarize, py::arg("per_seed"));

  // bound checks
  m.def(
      "check_fault_sensitivity",
      [](const std::string& policy, const Trace& base, double beta, std::size_t k_b,
         std::uint64_t seed) {
        return check_fault_sensitivity(policy_arg(policy), base, beta, k_b, seed);
      },
      py::arg("policy"), py::arg("base"), py::arg("beta"), py::arg("k_b"), py::arg("seed"));
  m.def(
      "check_theorem4",
      [](const std::string& policy, const ZipfSpec& spec, const std::vector<double>& beta_grid,
         double c, std::size_t k_b, const std::vector<std::uint64_t>& seeds) {
        return check_theorem4(policy_arg(policy), spec, beta_grid, c, k_b, seeds);
      },
      py::arg("policy"), py::arg("spec"), py::arg("beta_grid"), py::arg("c"), py::arg("k_b"),
      py::arg("seeds"));
  m.def("check_recall_bound", &check_recall_bound, py::arg("base"), py::arg("rho"),
        py::arg("k_b"), py::arg("seeds"));
  m.def("check_noisy_belady", &check_noisy_belady, py::arg("base"), py::arg("p_grid"),
        py::arg("k_b"), py::arg("d_f"), py::arg("seeds"));
  m.def("check_lower_bound", &check_lower_bound, py::arg("k_b"), py::arg("length_t"));
  m.def(
      "estimate_beta",
      [](const ZipfSpec& spec, double beta_true, const std::vector<std::string>& policies,
         std::size_t k_b, const std::vector<std::uint64_t>& seeds) {
        return estimate_beta(spec, beta_true, policy_list(policies), k_b, seeds);
      },
      py::arg("spec"), py::arg("beta_true"), py::arg("policies"), py::arg("k_b"),
      py::arg("seeds"));

  // exact oracles
  m.def("brute_force_min_faults", &brute_force_min_faults, py::arg("trace"), py::arg("k_b"));
  m.def("dp_min_faults", &dp_min_faults, py::arg("trace"), py::arg("k_b"));

  // Turing machine simulation
  m.def(
      "simulate_tm",
      [](const std::string& machine_text, const std::string& input, std::size_t block_b,
         std::size_t max_steps) {
        return simulate_tm(parse_tm_string(machine_text), input, block_b, max_steps);
      },
      py::arg("machine_text"), py::arg("input"), py::arg("block_b") = 4,
      py::arg("max_steps") = 1000000);
}
