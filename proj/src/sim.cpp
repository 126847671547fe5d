#include "pagelab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pagelab/format.hpp"

namespace pagelab {

SimResult simulate(const Trace& trace, PolicyKind kind, std::size_t k_b, std::uint64_t seed) {
  if (k_b == 0) throw std::invalid_argument("simulate: k_b must be >= 1");

  std::optional<NextUseIndex> index;
  if (needs_next_use(kind.policy)) index.emplace(build_next_use_index(trace));
  std::optional<SplitMix64> rng;
  if (needs_rng(kind.policy)) rng.emplace(seed);

  Cache cache(kind, k_b, index ? &*index : nullptr, rng ? &*rng : nullptr);

  SimResult result;
  result.policy = kind;
  result.k_b = k_b;
  result.seed = seed;
  result.fault_indicator.reserve(trace.length());

  for (std::size_t t = 0; t < trace.length(); ++t) {
    StepOutcome outcome = cache.step(trace.requests[t], t);
    result.fault_indicator.push_back(outcome.fault);
    if (outcome.fault) ++result.faults_total;
    if (outcome.evicted) result.eviction_log.emplace_back(t, *outcome.evicted);
  }
  return result;
}

double fault_rate(const SimResult& result, std::size_t t) {
  if (t == 0) throw std::invalid_argument("fault_rate: trace length must be >= 1");
  if (t != result.fault_indicator.size())
    throw std::invalid_argument("fault_rate: t does not match the simulated trace length");
  return static_cast<double>(result.faults_total) / static_cast<double>(t);
}

double competitive_ratio(std::size_t f_alg, std::size_t f_opt) {
  if (f_opt == 0)
    throw std::invalid_argument("competitive_ratio: undefined for f_opt = 0");
  return static_cast<double>(f_alg) / static_cast<double>(f_opt);
}

std::vector<std::size_t> working_set_series(const Trace& trace, std::size_t window) {
  if (window == 0) throw std::invalid_argument("working_set_series: window must be >= 1");
  std::vector<std::size_t> series(trace.length());
  std::vector<std::size_t> in_window(trace.universe_m, 0);
  std::size_t distinct = 0;
  for (std::size_t t = 0; t < trace.length(); ++t) {
    if (in_window[trace.requests[t]]++ == 0) ++distinct;
    if (t >= window) {
      BlockId leaving = trace.requests[t - window];
      if (--in_window[leaving] == 0) --distinct;
    }
    series[t] = distinct;
  }
  return series;
}

bool is_thrashing(const std::vector<std::size_t>& series, std::size_t k_b) {
  if (series.empty()) return false;
  std::vector<std::size_t> sorted(series);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  double median = (n % 2 == 1)
                      ? static_cast<double>(sorted[n / 2])
                      : (static_cast<double>(sorted[n / 2 - 1]) +
                         static_cast<double>(sorted[n / 2])) / 2.0;
  return median > static_cast<double>(k_b);
}

CostBreakdown cost_model(const CostModelParams& params) {
  if (params.n_tokens == 0 || params.context_k == 0 || params.block_b == 0 ||
      params.memory_m == 0)
    throw std::invalid_argument("cost_model: all parameters must be positive");
  if (params.context_k % params.block_b != 0)
    throw std::invalid_argument("cost_model: block_b must divide context_k");

  const double n = static_cast<double>(params.n_tokens);
  const double k = static_cast<double>(params.context_k);
  const double k_b = static_cast<double>(params.context_k / params.block_b);
  const double decisions = n / static_cast<double>(params.block_b);

  CostBreakdown cost;
  cost.attention_ops = n * k * k;
  cost.retrieval_ops = decisions * k_b * std::log2(static_cast<double>(params.memory_m));
  cost.policy_ops = decisions * k_b * k_b;
  cost.total = cost.attention_ops + cost.retrieval_ops + cost.policy_ops;
  return cost;
}

SummaryStats summarize(std::vector<double> per_seed) {
  if (per_seed.empty()) throw std::invalid_argument("summarize: empty sample");
  SummaryStats stats;
  stats.n_seeds = per_seed.size();
  double sum = 0;
  for (double v : per_seed) sum += v;
  stats.mean = sum / static_cast<double>(per_seed.size());
  if (per_seed.size() > 1) {
    double ss = 0;
    for (double v : per_seed) ss += (v - stats.mean) * (v - stats.mean);
    stats.sd = std::sqrt(ss / static_cast<double>(per_seed.size() - 1));
  }
  stats.per_seed = std::move(per_seed);
  return stats;
}

const char* const kRunCsvHeader = "policy,k_b,beta,seed,faults,fault_rate,ratio_vs_belady";

std::string run_csv_row(const SimResult& result, double beta, std::size_t trace_len,
                        std::size_t belady_faults) {
  std::ostringstream row;
  row << to_string(result.policy) << ',' << result.k_b << ',' << fmt_double(beta) << ','
      << result.seed << ',' << result.faults_total << ','
      << fmt_double(fault_rate(result, trace_len)) << ','
      << fmt_double(competitive_ratio(result.faults_total, belady_faults));
  return row.str();
}

}  // namespace pagelab
