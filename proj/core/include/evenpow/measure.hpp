#pragma once

#include <cstdint>
#include <vector>

#include "evenpow/fixed_point.hpp"

namespace evenpow {

// Interval enumeration is 4*5^(d-2) pieces at depth d; past depth 10 the
// set no longer fits in memory comfortably and nothing downstream needs it.
inline constexpr int kDepthEnumerationLimit = 10;

// Number of decimal digits of 2^k: floor(k*log10(2)) + 1, computed exactly
// from the 256-bit constant. The product k*W is formed in full; the result
// is provably correct as long as the 256-bit fractional part of k*W lands
// further than k units from an integer boundary, which is checked and can
// only fail for k beyond ~10^18.
uint64_t d_of_k(uint64_t k);

struct Interval {
  double lo;
  double hi;  // half-open [lo, hi)
};

// Absorbs double rounding of transcendental endpoints in membership
// queries; several ulps wide, ten thousand times smaller than any tolerance
// used on measures or hit statistics.
inline constexpr double kEndpointSlack = 4e-15;

// The set of fractional parts f such that a number with fractional mantissa
// 10^f starts with d digits that are all <= 4 (leading digit 1..4, the next
// d-1 digits 0..4). Stored as disjoint sorted half-open intervals of [0,1).
class PrefixIntervalSet {
 public:
  int depth() const { return depth_; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  // Binary search over interval starts; half-open [lo, hi) with lo treated
  // as inside down to kEndpointSlack below it (see the note in the source).
  bool contains(double f) const;
  double total_length() const;     // compensated sum of interval lengths

 private:
  friend PrefixIntervalSet build_B_d(int d);
  int depth_ = 0;
  std::vector<Interval> intervals_;
};

// Builds the depth-d set. Depth 1 is four intervals [log10 q, log10(q+1))
// for q = 1..4; at depth d >= 2 the admissible d-th digits 0..4 of a prefix
// are contiguous, so each (d-1)-digit prefix Q contributes the single run
// [log10 Q, log10(Q + 1/2)) scaled down by 10^(d-2). Throws capacity_error
// above kDepthEnumerationLimit, std::invalid_argument for d < 1.
PrefixIntervalSet build_B_d(int d);

// Exact Lebesgue measure of the depth-d set, as a compensated sum of
// log10(1 + 1/(2Q)) over the admissible prefixes Q. Also available is the
// closed-form bound 2^(3-d)/ln 10, which the exact value must stay under.
double exact_measure(int d);
double upper_bound_measure(int d);

struct MeasureReport {
  int d;
  double exact_measure;
  double upper_bound;  // 2^(3-d)/ln 10
  double decay_rate;   // exact(d)/exact(d-1), NaN at d = 1
};

// Measure of the depth-d set together with its bound and the decay ratio
// against depth d-1. A measure above its bound means the enumeration is
// wrong and throws std::logic_error.
MeasureReport measure_B_d(int d);

// Rows for d = 1..d_max, each depth enumerated once.
std::vector<MeasureReport> measure_table(int d_max);

struct SummabilityReport {
  int d_max;
  std::vector<double> per_d_measures;  // exact measures for d = 1..d_max
  int multiplicity_bound;              // max count of k sharing a digit count
  double partial_sum;   // multiplicity_bound * sum of per_d_measures
  double tail_bound;    // multiplicity_bound * geometric tail past d_max
  double total() const { return partial_sum + tail_bound; }
};

// Upper-bounds the sum over all k of the measure of the depth-d(k) set by
// grouping the k with equal digit count. At most ceil(1/log10 2) = 4 values
// of k share a digit count; the tail past d_max is geometric.
SummabilityReport summability(int d_max);

enum class HeuristicMode { paper_geometric, exact_dk };

// Expected number of k >= 1 whose orbit point falls in its depth-d(k)
// target, modelling the target measure as 2^(-d). paper_geometric replaces
// d(k) by k*log10(2)+1 and sums the geometric series q/(1-q), q = 2^(-c);
// exact_dk sums 2^(-d(k)) term by term until the grouped geometric tail
// bound drops below 1e-12.
double heuristic_expected_count(HeuristicMode mode);

}  // namespace evenpow
