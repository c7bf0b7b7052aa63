#include "evenpow/exact.hpp"

#include <stdexcept>

#include "evenpow/errors.hpp"

namespace evenpow {

namespace {

constexpr uint64_t kLimbBase = 1000000000000000000ull;  // 10^18
constexpr int kLimbDigits = 18;

int u64_digits(uint64_t v) {
  int n = 1;
  while (v >= 10) {
    v /= 10;
    ++n;
  }
  return n;
}

// digit predicates on one limb; trailing zeros of the limb are skipped by
// the v != 0 guard and zeros pass both predicates anyway
bool limb_all_le4(uint64_t v) {
  while (v != 0) {
    if (v % 10 > 4) return false;
    v /= 10;
  }
  return true;
}

bool limb_all_even(uint64_t v) {
  while (v != 0) {
    if ((v % 10) & 1) return false;
    v /= 10;
  }
  return true;
}

}  // namespace

BigDecimalNat BigDecimalNat::from_u64(uint64_t value) {
  BigDecimalNat out;
  out.limbs_[0] = value % kLimbBase;
  if (value >= kLimbBase) out.limbs_.push_back(value / kLimbBase);
  return out;
}

void BigDecimalNat::double_in_place() {
  uint64_t carry = 0;
  for (uint64_t& limb : limbs_) {
    uint64_t t = limb * 2 + carry;  // limb < 10^18 so this stays below 2^63
    carry = t >= kLimbBase;
    if (carry) t -= kLimbBase;
    limb = t;
  }
  if (carry) limbs_.push_back(1);
}

uint64_t BigDecimalNat::digit_count() const {
  return kLimbDigits * (limbs_.size() - 1) + u64_digits(limbs_.back());
}

std::string BigDecimalNat::to_string() const {
  std::string out = std::to_string(limbs_.back());
  char buf[kLimbDigits + 1];
  for (size_t i = limbs_.size() - 1; i-- > 0;) {
    uint64_t v = limbs_[i];
    for (int d = kLimbDigits - 1; d >= 0; --d) {
      buf[d] = char('0' + v % 10);
      v /= 10;
    }
    out.append(buf, kLimbDigits);
  }
  return out;
}

bool all_digits_le4(const BigDecimalNat& v) {
  for (uint64_t limb : v.limbs())
    if (!limb_all_le4(limb)) return false;
  return true;
}

bool all_digits_even(const BigDecimalNat& v) {
  for (uint64_t limb : v.limbs())
    if (!limb_all_even(limb)) return false;
  return true;
}

BigDecimalNat pow2_exact(uint64_t p, uint64_t exponent_limit) {
  if (p > exponent_limit)
    throw capacity_error("pow2_exact: exponent " + std::to_string(p) +
                         " over limit " + std::to_string(exponent_limit));
  BigDecimalNat v = BigDecimalNat::from_u64(1);
  for (uint64_t i = 0; i < p; ++i) v.double_in_place();
  return v;
}

VerifyStatus verify_even_power(uint64_t n, uint64_t exponent_limit) {
  if (n > exponent_limit)
    throw capacity_error("verify_even_power: exponent " + std::to_string(n) +
                         " over limit " + std::to_string(exponent_limit));
  if (n == 0)
    return all_digits_even(BigDecimalNat::from_u64(1))
               ? VerifyStatus::confirmed_solution
               : VerifyStatus::refuted;
  BigDecimalNat half = pow2_exact(n - 1, exponent_limit);
  bool le4 = all_digits_le4(half);
  half.double_in_place();
  bool even = all_digits_even(half);
  if (le4 != even)
    throw std::logic_error("verify_even_power: digit predicates disagree at n=" +
                           std::to_string(n));
  return even ? VerifyStatus::confirmed_solution : VerifyStatus::refuted;
}

ScanExactResult scan_exact(uint64_t n_max, uint64_t exponent_limit) {
  if (n_max > exponent_limit)
    throw capacity_error("scan_exact: n_max " + std::to_string(n_max) +
                         " over limit " + std::to_string(exponent_limit));
  ScanExactResult result;
  result.n_max = n_max;
  BigDecimalNat v = BigDecimalNat::from_u64(1);  // 2^0
  std::vector<bool> le4_flags;
  le4_flags.reserve(n_max + 1);
  for (uint64_t n = 0;; ++n) {
    bool le4 = all_digits_le4(v);
    le4_flags.push_back(le4);
    if (le4) result.le4_p.push_back(n);
    if (all_digits_even(v)) result.even_n.push_back(n);
    if (n == n_max) break;
    v.double_in_place();
  }
  // doubling an all-<=4 number cannot carry, so the two lists must be the
  // same set shifted by one
  size_t ei = 0;
  for (uint64_t n = 1; n <= n_max; ++n) {
    while (ei < result.even_n.size() && result.even_n[ei] < n) ++ei;
    bool even = ei < result.even_n.size() && result.even_n[ei] == n;
    if (even != static_cast<bool>(le4_flags[n - 1]))
      throw std::logic_error("scan_exact: shift identity violated at n=" +
                             std::to_string(n));
  }
  return result;
}

}  // namespace evenpow
