#include "pagelab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pagelab {

namespace {

void check_guard(const Trace& trace, std::size_t k_b, std::uint32_t max_m, std::size_t max_t,
                 std::size_t max_k, const char* who) {
  if (k_b < 1 || k_b > max_k || trace.universe_m > max_m || trace.length() > max_t)
    throw std::invalid_argument(std::string(who) + ": instance exceeds limits (M <= " +
                                std::to_string(max_m) + ", T <= " + std::to_string(max_t) +
                                ", 1 <= k_b <= " + std::to_string(max_k) + ")");
}

std::size_t brute_force_rec(const std::vector<BlockId>& requests, std::size_t t,
                            std::uint32_t resident, std::size_t count, std::size_t k_b) {
  if (t == requests.size()) return 0;
  const std::uint32_t bit = 1u << requests[t];
  if (resident & bit) return brute_force_rec(requests, t + 1, resident, count, k_b);
  if (count < k_b) return 1 + brute_force_rec(requests, t + 1, resident | bit, count + 1, k_b);
  // Capacity miss: branch over every legal eviction.
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t mask = resident; mask != 0; mask &= mask - 1) {
    std::uint32_t evict_bit = mask & (~mask + 1);
    std::size_t sub =
        brute_force_rec(requests, t + 1, (resident & ~evict_bit) | bit, count, k_b);
    best = std::min(best, sub);
  }
  return 1 + best;
}

}  // namespace

std::size_t brute_force_min_faults(const Trace& trace, std::size_t k_b) {
  check_guard(trace, k_b, 6, 14, 3, "brute_force_min_faults");
  return brute_force_rec(trace.requests, 0, 0u, 0, k_b);
}

DpResult dp_min_faults(const Trace& trace, std::size_t k_b) {
  check_guard(trace, k_b, 12, 200, 8, "dp_min_faults");

  const std::uint32_t m = std::max<std::uint32_t>(trace.universe_m, 1);
  const std::uint32_t num_masks = 1u << m;

  // Dense index over resident sets of size <= k_b; everything else is
  // unreachable from the empty start state.
  std::vector<std::uint32_t> state_index(num_masks, num_masks);
  std::vector<std::uint32_t> states;
  for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) <= k_b) {
      state_index[mask] = static_cast<std::uint32_t>(states.size());
      states.push_back(mask);
    }
  }

  // Two layers only: layer t is computed from layer t+1 and then replaces it.
  std::vector<std::size_t> value_next(states.size(), 0);
  std::vector<std::size_t> value_cur(states.size(), 0);

  for (std::size_t t = trace.length(); t-- > 0;) {
    const std::uint32_t bit = 1u << trace.requests[t];
    for (std::size_t si = 0; si < states.size(); ++si) {
      const std::uint32_t mask = states[si];
      std::size_t v;
      if (mask & bit) {
        v = value_next[state_index[mask]];
      } else if (static_cast<std::size_t>(std::popcount(mask)) < k_b) {
        v = 1 + value_next[state_index[mask | bit]];
      } else {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::uint32_t rem = mask; rem != 0; rem &= rem - 1) {
          std::uint32_t evict_bit = rem & (~rem + 1);
          best = std::min(best, value_next[state_index[(mask & ~evict_bit) | bit]]);
        }
        v = 1 + best;
      }
      value_cur[si] = v;
    }
    std::swap(value_cur, value_next);
  }

  DpResult result;
  result.min_faults = value_next[state_index[0]];
  result.peak_layer_states = states.size();
  return result;
}

}  // namespace pagelab
