#include "pagelab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "pagelab/format.hpp"
#include "pagelab/sim.hpp"

namespace pagelab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

[[noreturn]] void config_error(std::size_t line_no, const std::string& key,
                               const std::string& what) {
  throw std::invalid_argument("config: line " + std::to_string(line_no) + ", key '" + key +
                              "': " + what);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& value, std::size_t line_no, const std::string& key,
                          Parse parse) {
  std::vector<T> out;
  for (const std::string& item : split_list(value)) {
    try {
      out.push_back(parse(item));
    } catch (const std::exception& e) {
      config_error(line_no, key, "bad list item '" + item + "' (" + e.what() + ")");
    }
  }
  if (out.empty()) config_error(line_no, key, "list must be non-empty");
  return out;
}

// Canonical ordering for deterministic CSV merges: (policy, k_b, beta, seed).
int policy_rank(const PolicyKind& kind) { return static_cast<int>(kind.policy); }

struct RowKey {
  int policy;
  double accuracy;
  std::size_t k_b;
  double beta;
  std::uint64_t seed;

  auto tied() const { return std::tie(policy, accuracy, k_b, beta, seed); }
  bool operator<(const RowKey& o) const { return tied() < o.tied(); }
};

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) config_error(line_no, key, "empty key");
    if (value.empty()) config_error(line_no, key, "empty value");

    auto as_u64 = [&](const std::string& v) {
      std::size_t pos = 0;
      std::uint64_t parsed = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("not an integer");
      return parsed;
    };
    auto as_double = [&](const std::string& v) {
      std::size_t pos = 0;
      double parsed = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("not a number");
      return parsed;
    };

    try {
      if (key == "zipf.universe_m") {
        config.zipf.universe_m = static_cast<std::uint32_t>(as_u64(value));
      } else if (key == "zipf.exponent_alpha") {
        config.zipf.exponent_alpha = as_double(value);
      } else if (key == "zipf.hot_set_size") {
        config.zipf.hot_set_size = static_cast<std::uint32_t>(as_u64(value));
      } else if (key == "zipf.shift_interval") {
        config.zipf.shift_interval = as_u64(value);
      } else if (key == "zipf.length_t") {
        config.zipf.length_t = as_u64(value);
      } else if (key == "k_b_grid") {
        config.k_b_grid = parse_list<std::size_t>(value, line_no, key, as_u64);
      } else if (key == "beta_grid") {
        config.beta_grid = parse_list<double>(value, line_no, key, as_double);
      } else if (key == "policies") {
        config.policies = parse_list<PolicyKind>(value, line_no, key, parse_policy);
      } else if (key == "seeds") {
        config.seeds = parse_list<std::uint64_t>(value, line_no, key, as_u64);
      } else if (key == "output_dir") {
        config.output_dir = value;
      } else {
        config_error(line_no, key, "unknown key");
      }
    } catch (const std::invalid_argument& e) {
      std::string what = e.what();
      if (what.rfind("config:", 0) == 0) throw;
      config_error(line_no, key, what);
    }
  }

  validate_spec(config.zipf);
  if (config.k_b_grid.empty() || config.beta_grid.empty() || config.policies.empty() ||
      config.seeds.empty())
    throw std::invalid_argument("config: grids, policies and seeds must be non-empty");
  std::vector<std::uint64_t> sorted_seeds = config.seeds;
  std::sort(sorted_seeds.begin(), sorted_seeds.end());
  if (std::adjacent_find(sorted_seeds.begin(), sorted_seeds.end()) != sorted_seeds.end())
    throw std::invalid_argument("config: seeds must be distinct");
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  return parse_config(in);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PAGING_LAB_THREADS")) {
    char* end = nullptr;
    unsigned long parsed = std::strtoul(env, &end, 10);
    if (end && *end == '\0') threads = parsed <= 1 ? 1 : parsed;
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

SweepTables run_sweep(const ExperimentConfig& config) {
  // Canonical job order up front; parallel workers fill disjoint slots.
  struct Job {
    RowKey key;
    PolicyKind kind;
  };
  std::vector<Job> jobs;
  for (const PolicyKind& kind : config.policies)
    for (std::size_t k_b : config.k_b_grid)
      for (std::uint64_t seed : config.seeds)
        jobs.push_back({RowKey{policy_rank(kind), kind.accuracy, k_b, 0.0, seed}, kind});
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.key < b.key; });

  // Belady fault counts per (k_b, seed) give every ratio denominator.
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> opt_faults;
  std::vector<std::pair<std::size_t, std::uint64_t>> denom_keys;
  for (std::size_t k_b : config.k_b_grid)
    for (std::uint64_t seed : config.seeds) denom_keys.emplace_back(k_b, seed);
  std::vector<std::size_t> denom_values(denom_keys.size());
  parallel_for(denom_keys.size(), [&](std::size_t i) {
    Trace trace = gen_zipf_trace(config.zipf, denom_keys[i].second);
    denom_values[i] = simulate(trace, belady(), denom_keys[i].first).faults_total;
  });
  for (std::size_t i = 0; i < denom_keys.size(); ++i) opt_faults[denom_keys[i]] = denom_values[i];

  std::vector<SimResult> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    Trace trace = gen_zipf_trace(config.zipf, jobs[i].key.seed);
    results[i] = simulate(trace, jobs[i].kind, jobs[i].key.k_b, jobs[i].key.seed);
  });

  const std::size_t t_len = config.zipf.length_t;
  std::ostringstream runs;
  runs << kRunCsvHeader << "\n";
  for (std::size_t i = 0; i < jobs.size(); ++i)
    runs << run_csv_row(results[i], 0.0, t_len,
                        opt_faults.at({jobs[i].key.k_b, jobs[i].key.seed}))
         << "\n";

  std::ostringstream fig3a, fig3b;
  fig3a << "policy,k_b,mean_fault_rate,sd,n_seeds\n";
  fig3b << "policy,k_b,mean_ratio,sd,n_seeds\n";
  for (std::size_t i = 0; i < jobs.size();) {
    // Jobs are sorted, so each (policy, k_b) group is contiguous with one
    // entry per seed.
    std::size_t j = i;
    std::vector<double> rates, ratios;
    while (j < jobs.size() && jobs[j].key.policy == jobs[i].key.policy &&
           jobs[j].key.accuracy == jobs[i].key.accuracy && jobs[j].key.k_b == jobs[i].key.k_b) {
      rates.push_back(fault_rate(results[j], t_len));
      ratios.push_back(competitive_ratio(results[j].faults_total,
                                         opt_faults.at({jobs[j].key.k_b, jobs[j].key.seed})));
      ++j;
    }
    SummaryStats rate_stats = summarize(rates);
    SummaryStats ratio_stats = summarize(ratios);
    const std::string prefix =
        to_string(jobs[i].kind) + "," + std::to_string(jobs[i].key.k_b) + ",";
    fig3a << prefix << fmt_double(rate_stats.mean) << ',' << fmt_double(rate_stats.sd) << ','
          << rate_stats.n_seeds << "\n";
    fig3b << prefix << fmt_double(ratio_stats.mean) << ',' << fmt_double(ratio_stats.sd) << ','
          << ratio_stats.n_seeds << "\n";
    i = j;
  }

  return SweepTables{runs.str(), fig3a.str(), fig3b.str()};
}

namespace {

// Validation always runs the canonical setup of the bound experiments.
constexpr std::size_t kValidateKb = 8;
const std::vector<double> kRhoGrid = {0.8, 0.9, 0.95, 1.0};
const std::vector<double> kAccuracyGrid = {0.0, 0.25, 0.5, 0.75, 1.0};
const std::vector<std::size_t> kAdversarialKb = {2, 4, 8};
const std::vector<double> kBetaTrueGrid = {0.0, 0.1, 0.2, 0.4};

}  // namespace

ValidateTables run_validate(const ExperimentConfig& config) {
  ValidateTables out;
  const auto& seeds = config.seeds;

  std::vector<Trace> bases(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    bases[i] = gen_zipf_trace(config.zipf, seeds[i]);
  });

  // Lemma 1a over deterministic policies x beta grid x seeds.
  const std::vector<PolicyKind> det_policies = {lru(), fifo(), lfu(), belady()};
  struct SensJob {
    PolicyKind kind;
    double beta;
    std::size_t seed_idx;
  };
  std::vector<SensJob> sens_jobs;
  for (const PolicyKind& kind : det_policies)
    for (double beta : config.beta_grid)
      for (std::size_t si = 0; si < seeds.size(); ++si) sens_jobs.push_back({kind, beta, si});
  std::vector<SensitivityCheck> sens_results(sens_jobs.size());
  parallel_for(sens_jobs.size(), [&](std::size_t i) {
    const SensJob& job = sens_jobs[i];
    sens_results[i] = check_fault_sensitivity(job.kind, bases[job.seed_idx], job.beta,
                                              kValidateKb, seeds[job.seed_idx]);
  });

  std::ostringstream cascade;
  cascade << "policy,k_b,beta,seed,flips_d,empirical_diff,cascade_factor\n";
  for (std::size_t i = 0; i < sens_jobs.size(); ++i) {
    out.reports.push_back(sens_results[i].report);
    if (sens_results[i].cascade) {
      const CascadeReport& cr = *sens_results[i].cascade;
      cascade << to_string(sens_jobs[i].kind) << ',' << kValidateKb << ','
              << fmt_double(cr.beta) << ',' << seeds[sens_jobs[i].seed_idx] << ',' << cr.flips_d
              << ',' << cr.empirical_diff << ',' << fmt_double(cr.cascade_factor) << "\n";
    }
  }
  out.cascade_csv = cascade.str();

  // Theorem 4 with the worst-case c = k_b, then with the measured ratio at
  // beta = 0 as a tighter, informational variant.
  for (BoundReport& r :
       check_theorem4(lru(), config.zipf, config.beta_grid, kValidateKb, kValidateKb, seeds))
    out.reports.push_back(std::move(r));
  {
    std::vector<double> ratios;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const std::size_t f_lru = simulate(bases[si], lru(), kValidateKb).faults_total;
      const std::size_t f_opt = simulate(bases[si], belady(), kValidateKb).faults_total;
      ratios.push_back(competitive_ratio(f_lru, f_opt));
    }
    const double c_emp = std::max(1.0, summarize(ratios).mean);
    for (BoundReport& r :
         check_theorem4(lru(), config.zipf, config.beta_grid, c_emp, kValidateKb, seeds)) {
      r.hard = false;
      out.reports.push_back(std::move(r));
    }
  }

  // Lemma 1b recall grid.
  for (double rho : kRhoGrid) {
    RecallCheck rc = check_recall_bound(bases[0], rho, kValidateKb, seeds);
    out.reports.push_back(std::move(rc.corrected));
    out.reports.push_back(std::move(rc.plain));
  }

  // Proposition 6 with the cascade-derived fault impact.
  for (BoundReport& r : check_noisy_belady(bases[0], kAccuracyGrid, kValidateKb,
                                           static_cast<double>(kValidateKb + 1), seeds))
    out.reports.push_back(std::move(r));

  // Theorem 3 on the cyclic adversary.
  for (std::size_t k_b : kAdversarialKb)
    for (BoundReport& r : check_lower_bound(k_b, config.zipf.length_t))
      out.reports.push_back(std::move(r));

  // Sensitivity-estimation protocol.
  std::ostringstream beta_hat;
  beta_hat << "beta_true,beta_hat,k_b,policies,seed_count\n";
  std::vector<double> beta_hats;
  for (double beta_true : kBetaTrueGrid) {
    double est = estimate_beta(config.zipf, beta_true, {lru(), fifo()}, kValidateKb, seeds);
    beta_hats.push_back(est);
    beta_hat << fmt_double(beta_true) << ',' << fmt_double(est) << ',' << kValidateKb
             << ",lru|fifo," << seeds.size() << "\n";
  }
  out.beta_hat_csv = beta_hat.str();

  std::ostringstream bounds;
  bounds << kBoundCsvHeader << "\n";
  for (const BoundReport& r : out.reports) bounds << bound_csv_row(r) << "\n";
  out.bounds_csv = bounds.str();

  out.all_hard_satisfied = true;
  for (const BoundReport& r : out.reports) {
    if (r.hard && !r.satisfied) {
      out.all_hard_satisfied = false;
      out.failures.push_back(bound_csv_row(r));
    }
  }
  if (beta_hats.front() != 0.0) {
    out.all_hard_satisfied = false;
    out.failures.push_back("beta_hat at beta_true=0 is " + fmt_double(beta_hats.front()) +
                           ", expected exactly 0");
  }
  for (std::size_t i = 1; i < beta_hats.size(); ++i) {
    if (beta_hats[i] + 1e-9 < beta_hats[i - 1]) {
      out.all_hard_satisfied = false;
      out.failures.push_back("beta_hat not monotone at beta_true=" +
                             fmt_double(kBetaTrueGrid[i]));
    }
  }
  return out;
}

Fig4Tables run_reproduce_fig4(const ExperimentConfig& config) {
  const auto& seeds = config.seeds;
  const std::size_t k_b = kValidateKb;
  const double c = static_cast<double>(k_b);
  const double t_len = static_cast<double>(config.zipf.length_t);

  std::vector<Trace> bases(seeds.size());
  std::vector<std::size_t> base_faults(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    bases[i] = gen_zipf_trace(config.zipf, seeds[i]);
    base_faults[i] = simulate(bases[i], lru(), k_b).faults_total;
  });

  struct Cell {
    double diff = 0, faults = 0, opt = 0, cascade = 0;
    bool has_cascade = false;
  };
  std::vector<Cell> cells(config.beta_grid.size() * seeds.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const double beta = config.beta_grid[i / seeds.size()];
    const std::size_t si = i % seeds.size();
    PerturbedTrace perturbed = perturb_trace(bases[si], beta, seeds[si]);
    const std::size_t f_lru = simulate(perturbed.trace, lru(), k_b).faults_total;
    const std::size_t f_opt = simulate(perturbed.trace, belady(), k_b).faults_total;
    Cell& cell = cells[i];
    cell.faults = static_cast<double>(f_lru);
    cell.opt = static_cast<double>(f_opt);
    cell.diff = static_cast<double>(f_lru > base_faults[si] ? f_lru - base_faults[si]
                                                            : base_faults[si] - f_lru);
    if (perturbed.hamming_d > 0) {
      cell.cascade = cell.diff / static_cast<double>(perturbed.hamming_d);
      cell.has_cascade = true;
    }
  });

  std::ostringstream fig4a, fig4b;
  fig4a << "beta,policy,k_b,flips_d,mean_abs_diff,sd,ref_beta_t,lemma1a_bound,"
           "mean_cascade_factor,n_seeds\n";
  fig4b << "beta,policy,k_b,mean_faults,sd,mean_opt_faults,c,thm4_bound,n_seeds\n";
  for (std::size_t bi = 0; bi < config.beta_grid.size(); ++bi) {
    const double beta = config.beta_grid[bi];
    const auto d = static_cast<std::size_t>(std::floor(beta * t_len));
    std::vector<double> diffs, faults, opts, cascades;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const Cell& cell = cells[bi * seeds.size() + si];
      diffs.push_back(cell.diff);
      faults.push_back(cell.faults);
      opts.push_back(cell.opt);
      if (cell.has_cascade) cascades.push_back(cell.cascade);
    }
    SummaryStats diff_stats = summarize(diffs);
    SummaryStats fault_stats = summarize(faults);
    SummaryStats opt_stats = summarize(opts);
    fig4a << fmt_double(beta) << ",lru," << k_b << ',' << d << ','
          << fmt_double(diff_stats.mean) << ',' << fmt_double(diff_stats.sd) << ','
          << fmt_double(beta * t_len) << ',' << fmt_double(static_cast<double>((k_b + 1) * d))
          << ',' << (cascades.empty() ? std::string() : fmt_double(summarize(cascades).mean))
          << ',' << seeds.size() << "\n";
    const double bound =
        c * opt_stats.mean + (c + 1.0) * static_cast<double>(k_b + 1) * beta * t_len;
    fig4b << fmt_double(beta) << ",lru," << k_b << ',' << fmt_double(fault_stats.mean) << ','
          << fmt_double(fault_stats.sd) << ',' << fmt_double(opt_stats.mean) << ','
          << fmt_double(c) << ',' << fmt_double(bound) << ',' << seeds.size() << "\n";
  }
  return Fig4Tables{fig4a.str(), fig4b.str()};
}

}  // namespace pagelab
