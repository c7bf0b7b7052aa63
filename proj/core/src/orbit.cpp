#include "evenpow/orbit.hpp"

#include <cstdint>
#include <stdexcept>
#include <thread>

#include "evenpow/errors.hpp"

namespace evenpow {

namespace {

// sample i of seed s reads the canonical splitmix64 stream at position i
uint64_t splitmix64_at(uint64_t seed, uint64_t index) {
  uint64_t x = seed + (index + 1) * 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr char kGeneratorDesc[] =
    "splitmix64(seed + (i+1)*0x9e3779b97f4a7c15), output as a 64-bit binary fraction";

// Interval sets for depths 1..d_cap. Membership at depth d implies
// membership at every shallower depth, so a couple of small-depth checks in
// front of the real query reject most phases while staying in cache; with
// ~60% of phases gone after four comparisons the deep binary search over
// millions of intervals runs only on serious candidates.
class DepthSets {
 public:
  explicit DepthSets(int d_cap) {
    sets_.reserve(d_cap + 1);
    sets_.emplace_back();  // unused depth-0 slot
    for (int d = 1; d <= d_cap; ++d) sets_.push_back(build_B_d(d));
  }

  bool contains(int depth, double f) const {
    if (depth >= 3 && !quick_depth2(f)) return false;
    if (depth >= 6 && !sets_[4].contains(f)) return false;
    return sets_[depth].contains(f);
  }

 private:
  bool quick_depth2(double f) const {
    for (const Interval& iv : sets_[2].intervals()) {
      if (f < iv.lo - kEndpointSlack) return false;
      if (f < iv.hi) return true;
    }
    return false;
  }

  std::vector<PrefixIntervalSet> sets_;
};

// k = 1..k_max: one constant add per step. The carry out of the unit
// position counts digit-boundary crossings of k*log10(2), which is exactly
// d(k) - 1, so no per-step multiply or float is needed for the depth.
uint64_t run_orbit(const Fixed256& x0, uint64_t k_max, int d_cap,
                   const DepthSets& sets, std::vector<uint64_t>* hit_ks,
                   bool& truncated) {
  Fixed256 kc{};
  int64_t depth = 1;
  uint64_t hits = 0;
  for (uint64_t k = 1; k <= k_max; ++k) {
    depth += add_wrap(kc, kLog10TwoFrac);
    int dm = static_cast<int>(depth);
    if (depth > d_cap) {
      dm = d_cap;
      truncated = true;
    }
    Fixed256 phase = x0;
    add_wrap(phase, kc);  // integer carry dropped: we want the fractional part
    if (sets.contains(dm, phase.to_double())) {
      ++hits;
      if (hit_ks) hit_ks->push_back(k);
    }
  }
  return hits;
}

void check_config(const OrbitConfig& cfg) {
  if (cfg.k_max < 1) throw std::invalid_argument("orbit: k_max must be >= 1");
  if (cfg.d_cap < 1) throw std::invalid_argument("orbit: d_cap must be >= 1");
  if (cfg.d_cap > kDepthEnumerationLimit)
    throw capacity_error("orbit: d_cap " + std::to_string(cfg.d_cap) +
                         " over enumeration limit " +
                         std::to_string(kDepthEnumerationLimit));
}

}  // namespace

OrbitReport orbit_hits(const OrbitConfig& cfg) {
  check_config(cfg);
  Fixed256 x0 = Fixed256::parse_unit_fraction(cfg.x0);
  DepthSets sets(cfg.d_cap);
  OrbitReport rep;
  rep.hit_count = run_orbit(x0, cfg.k_max, cfg.d_cap, sets, &rep.hit_ks, rep.truncated);
  return rep;
}

EnsembleStats ensemble_stats(const OrbitConfig& cfg) {
  check_config(cfg);
  if (cfg.sample_count < 1)
    throw std::invalid_argument("orbit: sample_count must be >= 1");
  DepthSets sets(cfg.d_cap);

  struct Agg {
    uint64_t total = 0;
    uint64_t max = 0;
    std::map<uint64_t, uint64_t> hist;
    bool truncated = false;
  };

  unsigned hw = std::thread::hardware_concurrency();
  uint64_t nthreads = hw ? hw : 1;
  if (nthreads > cfg.sample_count) nthreads = cfg.sample_count;
  std::vector<Agg> per_thread(nthreads);

  auto run_chunk = [&](uint64_t tid) {
    Agg& agg = per_thread[tid];
    for (uint64_t i = tid; i < cfg.sample_count; i += nthreads) {
      Fixed256 x0 = Fixed256::from_u64_fraction(splitmix64_at(cfg.rng_seed, i));
      uint64_t hits = run_orbit(x0, cfg.k_max, cfg.d_cap, sets, nullptr, agg.truncated);
      agg.total += hits;
      if (hits > agg.max) agg.max = hits;
      ++agg.hist[hits];
    }
  };

  if (nthreads == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (uint64_t t = 0; t < nthreads; ++t) pool.emplace_back(run_chunk, t);
    for (auto& th : pool) th.join();
  }

  // integer totals merge exactly, so the mean is independent of thread count
  EnsembleStats stats;
  uint64_t total = 0;
  for (const Agg& agg : per_thread) {
    total += agg.total;
    if (agg.max > stats.max_hits) stats.max_hits = agg.max;
    for (auto [count, times] : agg.hist) stats.histogram[count] += times;
  }
  stats.mean_hits = double(total) / double(cfg.sample_count);
  stats.generator = kGeneratorDesc;
  return stats;
}

}  // namespace evenpow
