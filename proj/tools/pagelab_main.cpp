#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "pagelab/bounds.hpp"
#include "pagelab/experiment.hpp"
#include "pagelab/format.hpp"
#include "pagelab/oracle.hpp"
#include "pagelab/sim.hpp"
#include "pagelab/tm.hpp"
#include "pagelab/trace.hpp"

namespace fs = std::filesystem;
using namespace pagelab;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  std::cout << "wrote " << path.string() << "\n";
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir;

  ExperimentConfig load() const {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    return config;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config file (key = value lines)");
  cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
}

int cmd_gen_trace(const CommonOpts& common, const std::string& kind, std::uint64_t seed,
                  std::size_t k_b, double beta, const std::string& policy_name) {
  ExperimentConfig config = common.load();
  Trace trace;
  if (kind == "zipf") {
    trace = gen_zipf_trace(config.zipf, seed);
  } else if (kind == "adversarial") {
    trace = gen_adversarial_trace(k_b, config.zipf.length_t);
  } else if (kind == "coupled") {
    trace = gen_coupled_trace(config.zipf, beta, parse_policy(policy_name), k_b, seed);
  } else if (kind == "perturbed") {
    Trace base = gen_zipf_trace(config.zipf, seed);
    trace = perturb_trace(base, beta, seed).trace;
  } else {
    std::cerr << "unknown trace kind '" << kind
              << "' (expected zipf|adversarial|coupled|perturbed)\n";
    return 2;
  }
  if (common.out_dir.empty()) {
    write_trace(std::cout, trace);
    return 0;
  }
  fs::path dir = ensure_out_dir(common.out_dir);
  fs::path file = dir / ("trace_" + kind + "_seed" + std::to_string(seed) + ".txt");
  write_trace_file(file.string(), trace);
  std::cout << "wrote " << file.string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& trace_path, const std::string& policy_name, std::size_t k_b,
                 std::uint64_t seed) {
  Trace trace = read_trace_file(trace_path);
  if (trace.length() == 0) {
    std::cerr << "error: empty trace rejected\n";
    return 1;
  }
  PolicyKind kind = parse_policy(policy_name);
  SimResult result = simulate(trace, kind, k_b, seed);
  const std::size_t f_opt = simulate(trace, belady(), k_b).faults_total;
  std::cout << kRunCsvHeader << "\n"
            << run_csv_row(result, 0.0, trace.length(), f_opt) << "\n";
  return 0;
}

int cmd_sweep(const CommonOpts& common) {
  ExperimentConfig config = common.load();
  SweepTables tables = run_sweep(config);
  fs::path dir = ensure_out_dir(config.output_dir);
  write_file(dir / "runs.csv", tables.runs_csv);
  write_file(dir / "fig3a.csv", tables.fig3a_csv);
  write_file(dir / "fig3b.csv", tables.fig3b_csv);
  return 0;
}

int cmd_validate(const CommonOpts& common) {
  ExperimentConfig config = common.load();
  ValidateTables tables = run_validate(config);
  fs::path dir = ensure_out_dir(config.output_dir);
  write_file(dir / "bounds.csv", tables.bounds_csv);
  write_file(dir / "cascade.csv", tables.cascade_csv);
  write_file(dir / "beta_hat.csv", tables.beta_hat_csv);

  std::size_t hard = 0, satisfied = 0;
  for (const BoundReport& r : tables.reports) {
    if (!r.hard) continue;
    ++hard;
    if (r.satisfied) ++satisfied;
  }
  std::cout << "hard bound checks: " << satisfied << "/" << hard << " satisfied\n";
  if (!tables.all_hard_satisfied) {
    std::cerr << "validate: FAILED\n";
    for (const std::string& f : tables.failures) std::cerr << "  " << f << "\n";
    return 1;
  }
  std::cout << "validate: OK\n";
  return 0;
}

int cmd_reproduce(const CommonOpts& common, const std::string& figure) {
  ExperimentConfig config = common.load();
  fs::path dir = ensure_out_dir(config.output_dir);
  if (figure == "fig3") {
    SweepTables tables = run_sweep(config);
    write_file(dir / "fig3a.csv", tables.fig3a_csv);
    write_file(dir / "fig3b.csv", tables.fig3b_csv);
    return 0;
  }
  if (figure == "fig4") {
    Fig4Tables tables = run_reproduce_fig4(config);
    write_file(dir / "fig4a.csv", tables.fig4a_csv);
    write_file(dir / "fig4b.csv", tables.fig4b_csv);
    return 0;
  }
  std::cerr << "unknown figure '" << figure << "' (expected fig3|fig4)\n";
  return 2;
}

int cmd_oracle(const std::string& trace_path, std::size_t k_b) {
  Trace trace = read_trace_file(trace_path);
  const std::size_t brute = brute_force_min_faults(trace, k_b);
  const DpResult dp = dp_min_faults(trace, k_b);
  const std::size_t sim = simulate(trace, belady(), k_b).faults_total;
  std::cout << "brute_force_min_faults: " << brute << "\n"
            << "dp_min_faults:          " << dp.min_faults << "\n"
            << "belady_simulation:      " << sim << "\n";
  if (brute == dp.min_faults && dp.min_faults == sim) {
    std::cout << "agreement: yes\n";
    return 0;
  }
  std::cout << "agreement: NO\n";
  return 1;
}

int cmd_tm_run(const std::string& machine_path, const std::string& input, std::size_t block_b,
               std::size_t max_steps) {
  TmSpec tm = parse_tm_file(machine_path);
  TmRunResult result = simulate_tm(tm, input, block_b, max_steps);
  std::cout << "halted: " << (result.halted ? "yes" : "no (step limit)") << "\n"
            << "steps: " << result.steps << "\n"
            << "final_state: " << result.final_state << "\n"
            << "tape: " << result.tape_trimmed(tm.blank) << "\n"
            << "tape_window[" << result.window_start << "..]: " << result.tape_window << "\n"
            << "attention_ops: " << result.attention_ops << "\n"
            << "retrieval_queries: " << result.retrieval_queries << "\n";
  return result.halted ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pagelab: deterministic paging simulation and bound validation"};
  app.require_subcommand(1);

  CommonOpts gen_common;
  std::string gen_kind = "zipf";
  std::uint64_t gen_seed = 42;
  std::size_t gen_k_b = 8;
  double gen_beta = 0.0;
  std::string gen_policy = "lru";
  auto* gen = app.add_subcommand("gen-trace", "generate a trace (stdout or --out dir)");
  add_common(gen, gen_common);
  gen->add_option("--kind", gen_kind, "zipf|adversarial|coupled|perturbed");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--k-b", gen_k_b, "cache capacity (adversarial k_blocks / coupled policy)");
  gen->add_option("--beta", gen_beta, "perturbation or coupling strength");
  gen->add_option("--policy", gen_policy, "coupling policy");

  std::string sim_trace, sim_policy = "lru";
  std::size_t sim_k_b = 8;
  std::uint64_t sim_seed = 0;
  auto* sim = app.add_subcommand("simulate", "run one policy over a trace file");
  sim->add_option("trace", sim_trace, "trace file")->required();
  sim->add_option("--policy", sim_policy, "belady|lru|lfu|fifo|random|noisy:<p>");
  sim->add_option("--k-b", sim_k_b, "cache capacity in blocks");
  sim->add_option("--seed", sim_seed, "policy RNG seed");

  CommonOpts sweep_common;
  auto* sweep = app.add_subcommand("sweep", "fault-rate and ratio grid -> runs/fig3a/fig3b CSV");
  add_common(sweep, sweep_common);

  CommonOpts validate_common;
  auto* validate =
      app.add_subcommand("validate", "run every bound check -> bounds/cascade/beta_hat CSV");
  add_common(validate, validate_common);

  CommonOpts repro_common;
  std::string repro_figure;
  auto* repro = app.add_subcommand("reproduce", "regenerate figure data (fig3|fig4)");
  add_common(repro, repro_common);
  repro->add_option("figure", repro_figure, "fig3|fig4")->required();

  std::string oracle_trace;
  std::size_t oracle_k_b = 2;
  auto* oracle = app.add_subcommand("oracle", "tiny-instance optimality cross-check");
  oracle->add_option("trace", oracle_trace, "trace file")->required();
  oracle->add_option("--k-b", oracle_k_b, "cache capacity in blocks");

  auto* tm = app.add_subcommand("tm", "blocked-tape Turing machine tools");
  std::string tm_machine, tm_input;
  std::size_t tm_block = 4, tm_max_steps = 1000000;
  auto* tm_run = tm->add_subcommand("run", "run a machine over the block store");
  tm_run->add_option("machine", tm_machine, "machine definition file")->required();
  tm_run->add_option("input", tm_input, "input written from cell 0");
  tm_run->add_option("--block-size", tm_block, "cells per block");
  tm_run->add_option("--max-steps", tm_max_steps, "step limit");
  tm->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_trace(gen_common, gen_kind, gen_seed, gen_k_b, gen_beta,
                                            gen_policy);
    if (sim->parsed()) return cmd_simulate(sim_trace, sim_policy, sim_k_b, sim_seed);
    if (sweep->parsed()) return cmd_sweep(sweep_common);
    if (validate->parsed()) return cmd_validate(validate_common);
    if (repro->parsed()) return cmd_reproduce(repro_common, repro_figure);
    if (oracle->parsed()) return cmd_oracle(oracle_trace, oracle_k_b);
    if (tm->parsed() && tm_run->parsed()) return cmd_tm_run(tm_machine, tm_input, tm_block,
                                                            tm_max_steps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
