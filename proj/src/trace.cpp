#include "pagelab/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pagelab/cache.hpp"

namespace pagelab {

namespace {

// Salts for the side streams of gen_coupled_trace; the exogenous stream uses
// the bare seed so it aligns bit-for-bit with gen_zipf_trace.
constexpr std::uint64_t kCouplingSalt = 0x636F75706C696E67ULL;  // "coupling"
constexpr std::uint64_t kPolicySalt = 0x706F6C6963797230ULL;    // "policyr0"

void fisher_yates(std::vector<BlockId>& a, SplitMix64& rng) {
  for (std::size_t i = a.size() - 1; i > 0; --i) {
    std::size_t j = rng.next_below(i + 1);
    std::swap(a[i], a[j]);
  }
}

std::vector<double> zipf_cumulative(std::uint32_t m, double alpha) {
  std::vector<double> cum(m);
  double acc = 0.0;
  for (std::uint32_t rank = 1; rank <= m; ++rank) {
    acc += std::pow(static_cast<double>(rank), -alpha);
    cum[rank - 1] = acc;
  }
  return cum;
}

// Inverse-CDF draw: block with rank idx+1 where idx is the first entry of
// cum strictly above u * total.
std::size_t draw_rank_index(const std::vector<double>& cum, SplitMix64& rng) {
  double u = rng.next_double() * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  if (it == cum.end()) --it;  // u == total can only arise from rounding
  return static_cast<std::size_t>(it - cum.begin());
}

}  // namespace

Trace make_trace(std::vector<BlockId> requests, std::uint32_t universe_m) {
  if (universe_m == 0) {
    for (BlockId b : requests) universe_m = std::max(universe_m, b + 1);
    if (universe_m == 0) universe_m = 1;
  } else {
    for (BlockId b : requests) {
      if (b >= universe_m)
        throw std::invalid_argument("make_trace: request " + std::to_string(b) +
                                    " outside universe of size " + std::to_string(universe_m));
    }
  }
  Trace t;
  t.requests = std::move(requests);
  t.universe_m = universe_m;
  return t;
}

void validate_spec(const ZipfSpec& spec) {
  if (spec.universe_m == 0)
    throw std::invalid_argument("ZipfSpec: universe_m must be >= 1");
  if (spec.hot_set_size == 0 || spec.hot_set_size > spec.universe_m)
    throw std::invalid_argument("ZipfSpec: hot_set_size must be in [1, universe_m]");
  if (!(spec.exponent_alpha > 0.0))
    throw std::invalid_argument("ZipfSpec: exponent_alpha must be > 0");
  if (spec.shift_interval == 0)
    throw std::invalid_argument("ZipfSpec: shift_interval must be >= 1");
}

ZipfTraceDetail gen_zipf_trace_detailed(const ZipfSpec& spec, std::uint64_t seed) {
  validate_spec(spec);
  SplitMix64 rng(seed);

  // Requests are Zipf-distributed over the current working set only; the
  // rest of the universe enters the stream when the working set shifts.
  std::vector<double> cum = zipf_cumulative(spec.hot_set_size, spec.exponent_alpha);
  std::vector<BlockId> ranks(spec.universe_m);
  std::iota(ranks.begin(), ranks.end(), 0);

  ZipfTraceDetail out;
  out.trace.universe_m = spec.universe_m;
  out.trace.kind = "zipf";
  out.trace.seed = seed;
  out.trace.requests.reserve(spec.length_t);

  for (std::size_t t = 0; t < spec.length_t; ++t) {
    if (t % spec.shift_interval == 0) {
      if (spec.universe_m > 1) fisher_yates(ranks, rng);
      out.phase_ranks.push_back(ranks);
      if (t > 0) out.trace.phase_boundaries.push_back(t);
    }
    out.trace.requests.push_back(ranks[draw_rank_index(cum, rng)]);
  }
  return out;
}

Trace gen_zipf_trace(const ZipfSpec& spec, std::uint64_t seed) {
  return gen_zipf_trace_detailed(spec, seed).trace;
}

PerturbedTrace perturb_trace(const Trace& base, double beta, std::uint64_t seed) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("perturb_trace: beta must be in [0, 1]");
  if (base.requests.empty())
    throw std::invalid_argument("perturb_trace: base trace is empty");

  const std::size_t t_len = base.length();
  const std::size_t d = static_cast<std::size_t>(std::floor(beta * static_cast<double>(t_len)));
  if (d > 0 && base.universe_m < 2)
    throw std::invalid_argument("perturb_trace: no distinct replacement block exists (M < 2)");

  SplitMix64 rng(seed);

  // Partial Fisher-Yates: the first d entries are a uniform sample of
  // distinct positions.
  std::vector<std::size_t> positions(t_len);
  std::iota(positions.begin(), positions.end(), 0);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t j = i + rng.next_below(t_len - i);
    std::swap(positions[i], positions[j]);
  }
  positions.resize(d);
  std::sort(positions.begin(), positions.end());

  PerturbedTrace out;
  out.trace = base;
  out.trace.kind = "perturbed";
  out.trace.seed = seed;
  out.hamming_d = d;
  out.flipped_positions = positions;
  for (std::size_t pos : positions) {
    BlockId orig = base.requests[pos];
    // Uniform over the M-1 blocks distinct from the original.
    BlockId r = static_cast<BlockId>(rng.next_below(base.universe_m - 1));
    out.trace.requests[pos] = (r < orig) ? r : r + 1;
  }
  return out;
}

Trace gen_adversarial_trace(std::size_t k_blocks, std::size_t length_t) {
  if (k_blocks < 1)
    throw std::invalid_argument("gen_adversarial_trace: k_blocks must be >= 1");
  Trace t;
  t.universe_m = static_cast<std::uint32_t>(k_blocks + 1);
  t.kind = "adversarial";
  t.requests.reserve(length_t);
  for (std::size_t i = 0; i < length_t; ++i)
    t.requests.push_back(static_cast<BlockId>(i % (k_blocks + 1)));
  return t;
}

Trace gen_coupled_trace(const ZipfSpec& spec, double beta_true, PolicyKind policy,
                        std::size_t k_b, std::uint64_t seed) {
  if (!(beta_true >= 0.0 && beta_true <= 1.0))
    throw std::invalid_argument("gen_coupled_trace: beta_true must be in [0, 1]");
  if (needs_next_use(policy.policy))
    throw std::invalid_argument("gen_coupled_trace: offline policies cannot drive coupling");
  if (k_b == 0) throw std::invalid_argument("gen_coupled_trace: k_b must be >= 1");
  validate_spec(spec);

  SplitMix64 exo_rng(seed);
  SplitMix64 coupling_rng(seed ^ kCouplingSalt);
  SplitMix64 policy_rng(seed ^ kPolicySalt);

  std::vector<double> cum = zipf_cumulative(spec.hot_set_size, spec.exponent_alpha);
  std::vector<BlockId> ranks(spec.universe_m);
  std::iota(ranks.begin(), ranks.end(), 0);

  Cache cache(policy, k_b, nullptr, needs_rng(policy.policy) ? &policy_rng : nullptr);

  Trace out;
  out.universe_m = spec.universe_m;
  out.kind = "coupled";
  out.seed = seed;
  out.requests.reserve(spec.length_t);

  for (std::size_t t = 0; t < spec.length_t; ++t) {
    if (t % spec.shift_interval == 0) {
      if (spec.universe_m > 1) fisher_yates(ranks, exo_rng);
      if (t > 0) out.phase_boundaries.push_back(t);
    }
    BlockId request = ranks[draw_rank_index(cum, exo_rng)];
    if (coupling_rng.next_double() < beta_true) {
      if (auto evicted = cache.last_evicted()) request = *evicted;
      // Before any eviction has happened, fall back to the exogenous draw.
    }
    out.requests.push_back(request);
    cache.step(request, t);
  }
  return out;
}

std::size_t hamming_distance(const Trace& a, const Trace& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("hamming_distance: traces differ in length");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.length(); ++i)
    if (a.requests[i] != b.requests[i]) ++d;
  return d;
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << "# M=" << trace.universe_m << " T=" << trace.length() << " seed=" << trace.seed
      << " kind=" << trace.kind << "\n";
  for (BlockId b : trace.requests) out << b << "\n";
}

std::string trace_to_string(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

Trace read_trace(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.empty() || header[0] != '#')
    throw std::runtime_error("trace: missing '# M=... T=... seed=... kind=...' header");

  Trace trace;
  std::size_t t_len = 0;
  bool have_m = false, have_t = false;
  std::istringstream hs(header.substr(1));
  std::string token;
  while (hs >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("trace: malformed header token '" + token + "'");
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    try {
      if (key == "M") {
        trace.universe_m = static_cast<std::uint32_t>(std::stoul(value));
        have_m = true;
      } else if (key == "T") {
        t_len = std::stoul(value);
        have_t = true;
      } else if (key == "seed") {
        trace.seed = std::stoull(value);
      } else if (key == "kind") {
        trace.kind = value;
      } else {
        throw std::runtime_error("trace: unknown header key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("trace: bad value for header key '" + key + "'");
    }
  }
  if (!have_m || !have_t) throw std::runtime_error("trace: header must set M and T");

  trace.requests.reserve(t_len);
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    unsigned long id = 0;
    try {
      std::size_t pos = 0;
      id = std::stoul(line, &pos);
      if (pos != line.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::runtime_error("trace: line " + std::to_string(line_no) +
                               ": expected a block id, got '" + line + "'");
    }
    if (id >= trace.universe_m)
      throw std::runtime_error("trace: line " + std::to_string(line_no) + ": block id " +
                               std::to_string(id) + " >= M=" + std::to_string(trace.universe_m));
    trace.requests.push_back(static_cast<BlockId>(id));
  }
  if (trace.requests.size() != t_len)
    throw std::runtime_error("trace: header says T=" + std::to_string(t_len) + " but file has " +
                             std::to_string(trace.requests.size()) + " requests");
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("trace: cannot open '" + path + "'");
  return read_trace(in);
}

void write_trace_file(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("trace: cannot write '" + path + "'");
  write_trace(out, trace);
}

}  // namespace pagelab
