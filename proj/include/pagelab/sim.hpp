#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pagelab/cache.hpp"
#include "pagelab/trace.hpp"

namespace pagelab {

struct SimResult {
  std::size_t faults_total = 0;
  std::vector<bool> fault_indicator;
  std::vector<std::pair<std::size_t, BlockId>> eviction_log;  // (step, evicted block)
  PolicyKind policy;
  std::size_t k_b = 0;
  std::uint64_t seed = 0;

  bool operator==(const SimResult&) const = default;
};

// Runs kind over the trace from an empty cache. For Belady/NoisyBelady the
// next-use index is built internally from the full trace (offline knowledge).
// The seed feeds the policy RNG (Random/NoisyBelady); deterministic policies
// ignore it.
SimResult simulate(const Trace& trace, PolicyKind kind, std::size_t k_b,
                   std::uint64_t seed = 0);

double fault_rate(const SimResult& result, std::size_t t);
double competitive_ratio(std::size_t f_alg, std::size_t f_opt);

// W(t) = distinct blocks among requests[max(0, t-window+1) .. t].
std::vector<std::size_t> working_set_series(const Trace& trace, std::size_t window);
// Thrashing estimator: median of W(t) exceeds k_b.
bool is_thrashing(const std::vector<std::size_t>& series, std::size_t k_b);

struct CostModelParams {
  std::uint64_t n_tokens = 0;  // N
  std::uint64_t context_k = 0; // K
  std::uint64_t block_b = 0;   // B, must divide K
  std::uint64_t memory_m = 0;  // M
};

struct CostBreakdown {
  double attention_ops = 0;  // N * K^2
  double retrieval_ops = 0;  // (N/B) * K_b * log2(M)
  double policy_ops = 0;     // (N/B) * K_b^2
  double total = 0;
};

CostBreakdown cost_model(const CostModelParams& params);

struct SummaryStats {
  double mean = 0;
  double sd = 0;  // sample sd (n-1); 0 when n < 2
  std::size_t n_seeds = 0;
  std::vector<double> per_seed;
};

SummaryStats summarize(std::vector<double> per_seed);

template <typename Metric>
SummaryStats aggregate_seeds(const std::vector<SimResult>& results, Metric metric) {
  std::vector<double> values;
  values.reserve(results.size());
  for (const auto& r : results) values.push_back(metric(r));
  return summarize(std::move(values));
}

// CSV row format shared by the CLI and the sweep drivers.
extern const char* const kRunCsvHeader;  // policy,k_b,beta,seed,faults,fault_rate,ratio_vs_belady
std::string run_csv_row(const SimResult& result, double beta, std::size_t trace_len,
                        std::size_t belady_faults);

}  // namespace pagelab
