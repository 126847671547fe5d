#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pagelab/policy.hpp"
#include "pagelab/prng.hpp"

namespace pagelab {

using BlockId = std::uint32_t;

// A block-request stream: requests[t] < universe_m for all t.
struct Trace {
  std::vector<BlockId> requests;
  std::uint32_t universe_m = 0;
  std::vector<std::size_t> phase_boundaries;  // steps where a new phase starts (0 excluded)
  std::string kind = "manual";
  std::uint64_t seed = 0;

  std::size_t length() const { return requests.size(); }
};

// Builds a trace from raw requests; universe_m defaults to max(request)+1.
Trace make_trace(std::vector<BlockId> requests, std::uint32_t universe_m = 0);

struct ZipfSpec {
  std::uint32_t universe_m = 64;
  double exponent_alpha = 1.2;
  std::uint32_t hot_set_size = 16;
  std::size_t shift_interval = 500;
  std::size_t length_t = 5000;
};

void validate_spec(const ZipfSpec& spec);  // throws std::invalid_argument

// Non-stationary Zipf stream: every request is drawn from the current
// hot set with probability proportional to rank^(-alpha); the hot set is
// re-sampled from the universe at each phase boundary. Stream order per
// phase: one Fisher-Yates shuffle of the universe (M-1 draws), then one
// double per request. The shuffled array is the rank table: entry i carries
// Zipf rank i+1, and the first hot_set_size entries form the hot set.
Trace gen_zipf_trace(const ZipfSpec& spec, std::uint64_t seed);

// Same stream, but also returns the per-phase rank tables for diagnostics.
struct ZipfTraceDetail {
  Trace trace;
  std::vector<std::vector<BlockId>> phase_ranks;  // phase -> blocks ordered by rank
};
ZipfTraceDetail gen_zipf_trace_detailed(const ZipfSpec& spec, std::uint64_t seed);

struct PerturbedTrace {
  Trace trace;
  std::size_t hamming_d = 0;
  std::vector<std::size_t> flipped_positions;  // sorted
};

// Flips exactly floor(beta*T) distinct positions to a uniformly random block
// distinct from the original. Stream order: position selection (d draws via
// partial Fisher-Yates), then one replacement draw per flipped position in
// increasing position order.
PerturbedTrace perturb_trace(const Trace& base, double beta, std::uint64_t seed);

// Cyclic sequence over k_blocks+1 distinct blocks: requests[t] = t mod (k_blocks+1).
Trace gen_adversarial_trace(std::size_t k_blocks, std::size_t length_t);

// Policy-coupled request stream ("spite" coupling): with probability
// beta_true the request is the block most recently evicted by the running
// policy, otherwise the exogenous Zipf draw. The exogenous stream is seeded
// with `seed` exactly as gen_zipf_trace, so beta_true = 0 reproduces it
// byte-for-byte; coupling coins and the policy RNG use salted side streams.
// Offline policies (Belady, NoisyBelady) are rejected: they would need the
// future of the very trace being generated.
Trace gen_coupled_trace(const ZipfSpec& spec, double beta_true, PolicyKind policy,
                        std::size_t k_b, std::uint64_t seed);

std::size_t hamming_distance(const Trace& a, const Trace& b);

std::string trace_to_string(const Trace& trace);
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
void write_trace_file(const std::string& path, const Trace& trace);

}  // namespace pagelab
