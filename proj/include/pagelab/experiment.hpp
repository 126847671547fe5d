#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pagelab/bounds.hpp"
#include "pagelab/policy.hpp"
#include "pagelab/trace.hpp"

namespace pagelab {

struct ExperimentConfig {
  ZipfSpec zipf;
  std::vector<std::size_t> k_b_grid = {2, 4, 6, 8, 10, 12, 16};
  std::vector<double> beta_grid = {0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  std::vector<PolicyKind> policies = {belady(), lru(), lfu(), fifo(), random_evict()};
  std::vector<std::uint64_t> seeds = {42, 43, 44, 45, 46, 47, 48, 49, 50, 51};
  std::string output_dir = "out";
};

// Flat "key = value" config with dotted keys ("zipf.exponent_alpha = 1.2"),
// '#' comments, and comma-separated lists. Unknown keys and malformed values
// raise std::invalid_argument with the line number.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

// All output tables are returned as complete CSV strings so callers (CLI,
// tests) write them atomically; generation is deterministic for a fixed
// config, so repeated runs are byte-identical.
struct SweepTables {
  std::string runs_csv;   // one row per (policy, k_b, seed)
  std::string fig3a_csv;  // mean fault rate per (policy, k_b)
  std::string fig3b_csv;  // mean competitive ratio per (policy, k_b)
};
SweepTables run_sweep(const ExperimentConfig& config);

struct ValidateTables {
  std::vector<BoundReport> reports;
  std::string bounds_csv;
  std::string cascade_csv;   // per-seed cascade factors (lemma_1a side data)
  std::string beta_hat_csv;  // sensitivity-estimation protocol results
  bool all_hard_satisfied = false;
  std::vector<std::string> failures;  // human-readable hard failures
};
ValidateTables run_validate(const ExperimentConfig& config);

struct Fig4Tables {
  std::string fig4a_csv;  // fault stability vs beta
  std::string fig4b_csv;  // theorem-4 bound vs actual faults
};
Fig4Tables run_reproduce_fig4(const ExperimentConfig& config);

// Index-parallel map with deterministic output order. Thread count comes
// from PAGING_LAB_THREADS (0 or 1 = sequential, unset = hardware).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pagelab
