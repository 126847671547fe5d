#pragma once

#include <cstdint>

#include "pagelab/trace.hpp"

namespace pagelab {

// Exhaustive search over every legal eviction choice at every capacity miss.
// Guarded to tiny instances: universe <= 6, T <= 14, k_b in [1, 3].
std::size_t brute_force_min_faults(const Trace& trace, std::size_t k_b);

struct DpResult {
  std::size_t min_faults = 0;
  // Largest number of (resident-set, value) entries held in one layer; the
  // backward induction keeps exactly two layers alive.
  std::size_t peak_layer_states = 0;
};

// Finite-horizon backward induction over resident sets with one fault = one
// unit of cost. Guarded to universe <= 12, T <= 200, k_b in [1, 8].
DpResult dp_min_faults(const Trace& trace, std::size_t k_b);

}  // namespace pagelab
