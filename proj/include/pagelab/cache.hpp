#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pagelab/policy.hpp"
#include "pagelab/prng.hpp"
#include "pagelab/trace.hpp"

namespace pagelab {

// next_use[t] = smallest t' > t with requests[t'] == requests[t], else kNever.
struct NextUseIndex {
  static constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> next_use;
};

NextUseIndex build_next_use_index(const Trace& trace);

struct StepOutcome {
  bool fault = false;
  std::optional<BlockId> evicted;
  std::optional<BlockId> admitted;
};

// Cache state machine for one simulation run. Slots are kept in admission
// order; Random indexes into that order.
class Cache {
 public:
  struct Slot {
    BlockId block;
    std::size_t last_access;
    std::size_t access_count;  // resets on eviction (in-cache LFU)
    std::uint64_t inserted_at;
    std::size_t next_use;  // kNever when no index is attached
  };

  // next_use is required for Belady/NoisyBelady, rng for Random/NoisyBelady.
  Cache(PolicyKind kind, std::size_t capacity_kb, const NextUseIndex* next_use = nullptr,
        SplitMix64* rng = nullptr);

  StepOutcome step(BlockId request, std::size_t t);

  std::size_t size() const { return slots_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool contains(BlockId block) const;
  std::optional<BlockId> last_evicted() const { return last_evicted_; }
  const std::vector<Slot>& slots() const { return slots_; }

 private:
  std::size_t belady_victim() const;
  std::size_t pick_victim();

  PolicyKind kind_;
  std::size_t capacity_;
  const NextUseIndex* next_use_;
  SplitMix64* rng_;
  std::vector<Slot> slots_;
  std::uint64_t insert_counter_ = 0;
  std::optional<BlockId> last_evicted_;
};

}  // namespace pagelab
