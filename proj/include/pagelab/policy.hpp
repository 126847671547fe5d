#pragma once

#include <string>

namespace pagelab {

enum class Policy { Belady, Lru, Lfu, Fifo, Random, NoisyBelady };

// Eviction rule plus the accuracy parameter used by NoisyBelady.
struct PolicyKind {
  Policy policy = Policy::Lru;
  double accuracy = 1.0;  // NoisyBelady only: probability of the Belady choice

  bool operator==(const PolicyKind&) const = default;
};

inline PolicyKind belady() { return {Policy::Belady, 1.0}; }
inline PolicyKind lru() { return {Policy::Lru, 1.0}; }
inline PolicyKind lfu() { return {Policy::Lfu, 1.0}; }
inline PolicyKind fifo() { return {Policy::Fifo, 1.0}; }
inline PolicyKind random_evict() { return {Policy::Random, 1.0}; }
inline PolicyKind noisy_belady(double p) { return {Policy::NoisyBelady, p}; }

std::string to_string(const PolicyKind& kind);
PolicyKind parse_policy(const std::string& name);

bool needs_next_use(Policy p);
bool needs_rng(Policy p);
// True for policies whose eviction choices are a pure function of the trace.
bool is_deterministic(Policy p);

}  // namespace pagelab
