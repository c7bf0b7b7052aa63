#include "evenpow/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "evenpow/errors.hpp"

namespace evenpow {

namespace {

constexpr double kLn10 = 2.302585092994045684;

// compensated accumulator; the measure sums run to ~2e6 terms and the
// tolerances downstream are 1e-9, so plain summation would be marginal
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// visits every `digits`-digit prefix with leading digit 1..4 and later
// digits 0..4, in increasing numeric order
template <typename F>
void prefix_rec(uint64_t q, int remaining, F& fn) {
  if (remaining == 0) {
    fn(q);
    return;
  }
  q *= 10;
  for (int dig = 0; dig <= 4; ++dig) prefix_rec(q + dig, remaining - 1, fn);
}

template <typename F>
void for_each_prefix(int digits, F&& fn) {
  for (uint64_t lead = 1; lead <= 4; ++lead) prefix_rec(lead, digits - 1, fn);
}

void check_depth(int d) {
  if (d < 1) throw std::invalid_argument("depth must be >= 1, got " + std::to_string(d));
  if (d > kDepthEnumerationLimit)
    throw capacity_error("depth " + std::to_string(d) + " over enumeration limit " +
                         std::to_string(kDepthEnumerationLimit) +
                         " (5^(d-1) prefixes); use the closed-form bound instead");
}

}  // namespace

uint64_t d_of_k(uint64_t k) {
  if (k == 0) return 1;
  // full 320-bit product k * floor(log10(2) * 2^256)
  const auto& c = kLog10TwoFrac.w;
  uint64_t prod[5];
  unsigned __int128 carry = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 t = static_cast<unsigned __int128>(k) * c[i] + carry;
    prod[i] = static_cast<uint64_t>(t);
    carry = t >> 64;
  }
  prod[4] = static_cast<uint64_t>(carry);
  // The stored constant is floor-truncated, so the true product exceeds this
  // one by less than k units of 2^-256. The floor is trustworthy only when
  // the fractional part sits further than k from both integer boundaries;
  // since log10(2) is irrational that always holds in practice, but if it
  // ever fired we must not return a silently wrong digit count.
  bool near_zero = prod[3] == 0 && prod[2] == 0 && prod[1] == 0 && prod[0] <= k;
  bool near_one = prod[3] == ~0ull && prod[2] == ~0ull && prod[1] == ~0ull &&
                  prod[0] >= 0ull - k;
  if (near_zero || near_one)
    throw std::logic_error("d_of_k: fractional part of k*log10(2) within error bound "
                           "of an integer at k=" + std::to_string(k));
  return prod[4] + 1;
}

bool PrefixIntervalSet::contains(double f) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), f,
                             [](double x, const Interval& iv) { return x < iv.lo; });
  // Half-open [lo, hi): a query exactly at lo belongs to the set. Orbit
  // phases of powers of two land exactly on lo endpoints (f = log10 2 at
  // k=1), and after rounding both the endpoint and the query can sit an ulp
  // apart in either direction, so lo gets a slack of a few ulps. hi stays
  // strict: no phase in scope coincides with a hi that is not also the next
  // lo, because 10^hi has a factor of 5.
  if (it != intervals_.end() && f >= it->lo - kEndpointSlack) return true;
  if (it == intervals_.begin()) return false;
  --it;
  return f < it->hi;
}

double PrefixIntervalSet::total_length() const {
  Kahan acc;
  for (const Interval& iv : intervals_) acc.add(iv.hi - iv.lo);
  return acc.sum;
}

PrefixIntervalSet build_B_d(int d) {
  check_depth(d);
  PrefixIntervalSet set;
  set.depth_ = d;
  if (d == 1) {
    for (int q = 1; q <= 4; ++q)
      set.intervals_.push_back({std::log10(double(q)), std::log10(double(q + 1))});
    return set;
  }
  // the five admissible children of a (d-1)-digit prefix Q are consecutive,
  // so they merge into one run [log10 Q, log10(Q + 1/2)) shifted into [0,1)
  size_t count = 4;
  for (int i = 0; i < d - 2; ++i) count *= 5;
  set.intervals_.reserve(count);
  const double shift = double(d - 2);
  for_each_prefix(d - 1, [&](uint64_t q) {
    double lo = std::log10(double(q)) - shift;
    double hi = std::log10(double(q) + 0.5) - shift;
    set.intervals_.push_back({lo, hi});
  });
  return set;
}

double exact_measure(int d) {
  check_depth(d);
  if (d == 1) return std::log10(5.0);  // the four leading-digit terms telescope
  Kahan acc;
  for_each_prefix(d - 1, [&](uint64_t q) {
    // interval length log10((Q+1/2)/Q), formed without endpoint cancellation
    acc.add(std::log1p(0.5 / double(q)) / kLn10);
  });
  return acc.sum;
}

double upper_bound_measure(int d) {
  if (d < 1) throw std::invalid_argument("depth must be >= 1");
  return std::ldexp(1.0, 3 - d) / kLn10;
}

MeasureReport measure_B_d(int d) {
  check_depth(d);
  MeasureReport r;
  r.d = d;
  r.exact_measure = exact_measure(d);
  r.upper_bound = upper_bound_measure(d);
  r.decay_rate = d >= 2 ? r.exact_measure / exact_measure(d - 1)
                        : std::numeric_limits<double>::quiet_NaN();
  if (!(r.exact_measure > 0.0) || r.exact_measure > r.upper_bound)
    throw std::logic_error("measure_B_d: enumeration broke the closed-form bound at d=" +
                           std::to_string(d));
  return r;
}

std::vector<MeasureReport> measure_table(int d_max) {
  check_depth(d_max);
  std::vector<double> exact(d_max + 1, 0.0);
  for (int d = 1; d <= d_max; ++d) exact[d] = exact_measure(d);
  std::vector<MeasureReport> rows;
  rows.reserve(d_max);
  for (int d = 1; d <= d_max; ++d) {
    MeasureReport r;
    r.d = d;
    r.exact_measure = exact[d];
    r.upper_bound = upper_bound_measure(d);
    r.decay_rate = d >= 2 ? exact[d] / exact[d - 1]
                          : std::numeric_limits<double>::quiet_NaN();
    if (!(r.exact_measure > 0.0) || r.exact_measure > r.upper_bound)
      throw std::logic_error("measure_table: bound violated at d=" + std::to_string(d));
    rows.push_back(r);
  }
  return rows;
}

SummabilityReport summability(int d_max) {
  check_depth(d_max);
  SummabilityReport rep;
  rep.d_max = d_max;
  rep.multiplicity_bound = 4;  // ceil(1 / log10 2): at most 4 exponents share a digit count
  Kahan acc;
  for (int d = 1; d <= d_max; ++d) {
    double m = exact_measure(d);
    rep.per_d_measures.push_back(m);
    acc.add(m);
  }
  rep.partial_sum = rep.multiplicity_bound * acc.sum;
  // sum over d > d_max of 2^(3-d)/ln10 collapses to 2^(3-d_max)/ln10
  rep.tail_bound = rep.multiplicity_bound * std::ldexp(1.0, 3 - d_max) / kLn10;
  return rep;
}

double heuristic_expected_count(HeuristicMode mode) {
  if (mode == HeuristicMode::paper_geometric) {
    // each target modelled as measure 2^(-d) with d ~ k*log10(2)+1, giving a
    // geometric series with ratio q = 2^(-log10 2) ~ 0.812
    double q = std::exp2(-std::log10(2.0));
    return q / (1.0 - q);
  }
  // exact digit counts: sum 2^(-d(k)); everything past k is at most
  // 4 * sum_{d >= d(k)} 2^(-d) = 2^(3-d(k))
  Kahan acc;
  for (uint64_t k = 1;; ++k) {
    int d = static_cast<int>(d_of_k(k));
    acc.add(std::ldexp(1.0, -d));
    if (std::ldexp(1.0, 3 - d) < 1e-12) break;
  }
  return acc.sum;
}

}  // namespace evenpow
