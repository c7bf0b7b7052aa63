#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evenpow/fixed_point.hpp"
#include "evenpow/measure.hpp"

namespace evenpow {

struct OrbitConfig {
  std::string x0 = "0";       // phase in [0,1) as a decimal string
  uint64_t k_max = 1;
  int d_cap = 8;              // membership depth cap, <= enumeration limit
  uint64_t sample_count = 1;  // ensemble mode only
  uint64_t rng_seed = 0;      // ensemble mode only
};

struct OrbitReport {
  std::vector<uint64_t> hit_ks;  // k with {x0 + k c} in the depth-capped set
  uint64_t hit_count = 0;
  // set when some d(k) exceeded d_cap, in which case hits at those k are
  // tested against the shallower set and the count is an upper bound
  bool truncated = false;
};

// Walks k = 1..k_max accumulating k*c in 256-bit fixed point (the carry out
// of the unit position recovers d(k) on the fly, no separate multiply) and
// tests {x0 + k c} against the depth-min(d(k), d_cap) interval set.
OrbitReport orbit_hits(const OrbitConfig& cfg);

struct EnsembleStats {
  double mean_hits = 0.0;
  uint64_t max_hits = 0;
  std::map<uint64_t, uint64_t> histogram;  // hit_count -> sample count
  std::string generator;                   // phase generator, for reproducibility
};

// orbit_hits over sample_count seeded pseudo-random phases; deterministic
// for a fixed seed and independent of thread count (each sample's phase is
// derived from the seed and sample index alone).
EnsembleStats ensemble_stats(const OrbitConfig& cfg);

}  // namespace evenpow
