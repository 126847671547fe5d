#include "pagelab/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <tuple>

namespace pagelab {

std::string to_string(const PolicyKind& kind) {
  switch (kind.policy) {
    case Policy::Belady: return "belady";
    case Policy::Lru: return "lru";
    case Policy::Lfu: return "lfu";
    case Policy::Fifo: return "fifo";
    case Policy::Random: return "random";
    case Policy::NoisyBelady: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "noisy:%.10g", kind.accuracy);
      return buf;
    }
  }
  return "unknown";
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "belady") return belady();
  if (name == "lru") return lru();
  if (name == "lfu") return lfu();
  if (name == "fifo") return fifo();
  if (name == "random") return random_evict();
  for (const char* prefix : {"noisy:", "noisy_belady:"}) {
    if (name.rfind(prefix, 0) == 0) {
      double p = 0;
      try {
        std::size_t pos = 0;
        std::string value = name.substr(std::string(prefix).size());
        p = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("policy: bad accuracy in '" + name + "'");
      }
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("policy: accuracy must be in [0, 1]");
      return noisy_belady(p);
    }
  }
  throw std::invalid_argument(
      "policy: unknown '" + name +
      "' (expected belady|lru|lfu|fifo|random|noisy:<p>)");
}

bool needs_next_use(Policy p) { return p == Policy::Belady || p == Policy::NoisyBelady; }
bool needs_rng(Policy p) { return p == Policy::Random || p == Policy::NoisyBelady; }
bool is_deterministic(Policy p) { return !needs_rng(p); }

NextUseIndex build_next_use_index(const Trace& trace) {
  const std::size_t t_len = trace.length();
  NextUseIndex index;
  index.next_use.assign(t_len, NextUseIndex::kNever);
  std::vector<std::size_t> last_seen(trace.universe_m, NextUseIndex::kNever);
  for (std::size_t t = t_len; t-- > 0;) {
    BlockId b = trace.requests[t];
    index.next_use[t] = last_seen[b];
    last_seen[b] = t;
  }
  return index;
}

Cache::Cache(PolicyKind kind, std::size_t capacity_kb, const NextUseIndex* next_use,
             SplitMix64* rng)
    : kind_(kind), capacity_(capacity_kb), next_use_(next_use), rng_(rng) {
  if (capacity_ == 0) throw std::invalid_argument("cache: capacity must be >= 1");
  if (kind_.policy == Policy::NoisyBelady &&
      !(kind_.accuracy >= 0.0 && kind_.accuracy <= 1.0))
    throw std::invalid_argument("cache: NoisyBelady accuracy must be in [0, 1]");
  if (needs_next_use(kind_.policy) && next_use_ == nullptr)
    throw std::invalid_argument("cache: " + to_string(kind_) + " requires a next-use index");
  if (needs_rng(kind_.policy) && rng_ == nullptr)
    throw std::invalid_argument("cache: " + to_string(kind_) + " requires an RNG");
  slots_.reserve(capacity_);
}

bool Cache::contains(BlockId block) const {
  return std::any_of(slots_.begin(), slots_.end(),
                     [block](const Slot& s) { return s.block == block; });
}

std::size_t Cache::belady_victim() const {
  // Farthest next use wins; kNever beats everything finite; ties go to the
  // smallest block id.
  std::size_t best = 0;
  for (std::size_t i = 1; i < slots_.size(); ++i) {
    const Slot& a = slots_[i];
    const Slot& b = slots_[best];
    if (a.next_use > b.next_use || (a.next_use == b.next_use && a.block < b.block)) best = i;
  }
  return best;
}

std::size_t Cache::pick_victim() {
  const std::size_t n = slots_.size();
  switch (kind_.policy) {
    case Policy::Belady:
      return belady_victim();
    case Policy::Lru: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i) {
        const Slot& a = slots_[i];
        const Slot& b = slots_[best];
        if (a.last_access < b.last_access ||
            (a.last_access == b.last_access && a.block < b.block))
          best = i;
      }
      return best;
    }
    case Policy::Lfu: {
      // Minimum frequency, then least recently used, then smallest id.
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i) {
        const Slot& a = slots_[i];
        const Slot& b = slots_[best];
        auto key = [](const Slot& s) {
          return std::tuple(s.access_count, s.last_access, s.block);
        };
        if (key(a) < key(b)) best = i;
      }
      return best;
    }
    case Policy::Fifo: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (slots_[i].inserted_at < slots_[best].inserted_at) best = i;
      return best;
    }
    case Policy::Random:
      return rng_->next_below(n);
    case Policy::NoisyBelady: {
      std::size_t opt = belady_victim();
      if (rng_->next_double() < kind_.accuracy) return opt;
      if (n == 1) return 0;
      // Uniform over the non-Belady resident blocks, in slot order.
      std::size_t r = rng_->next_below(n - 1);
      return r < opt ? r : r + 1;
    }
  }
  throw std::logic_error("cache: unhandled policy");
}

StepOutcome Cache::step(BlockId request, std::size_t t) {
  StepOutcome out;
  for (Slot& slot : slots_) {
    if (slot.block == request) {
      slot.last_access = t;
      slot.access_count += 1;
      if (next_use_) slot.next_use = next_use_->next_use[t];
      return out;  // hit: no state growth
    }
  }

  out.fault = true;
  if (slots_.size() == capacity_) {
    std::size_t victim = pick_victim();
    out.evicted = slots_[victim].block;
    last_evicted_ = slots_[victim].block;
    slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  slots_.push_back(Slot{request, t, 1, insert_counter_++,
                        next_use_ ? next_use_->next_use[t] : NextUseIndex::kNever});
  out.admitted = request;
  return out;
}

}  // namespace pagelab
