#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace evenpow {

// Largest exponent the exact routines accept before refusing with a
// capacity error. 2^(10^6) is about 3*10^5 digits; the doubling chain up to
// it is minutes of work, a sane ceiling for a safety rail.
inline constexpr uint64_t kExactExponentLimit = 1000000;

// Arbitrary-precision natural number in base-10^18 limbs, least significant
// first, no leading zero limb (the value 0 is the single limb 0). Only the
// operations the scanner needs: doubling, digit inspection, printing.
class BigDecimalNat {
 public:
  BigDecimalNat() : limbs_(1, 0) {}
  static BigDecimalNat from_u64(uint64_t value);

  void double_in_place();

  uint64_t digit_count() const;
  const std::vector<uint64_t>& limbs() const { return limbs_; }
  std::string to_string() const;  // no leading zeros, "0" for zero

  bool operator==(const BigDecimalNat&) const = default;

 private:
  std::vector<uint64_t> limbs_;
};

// Every decimal digit <= 4 / every decimal digit even. Both bail out at the
// first offending digit, scanning from the least significant end.
bool all_digits_le4(const BigDecimalNat& v);
bool all_digits_even(const BigDecimalNat& v);

// 2^p by repeated doubling from 1. Throws capacity_error for p over the
// limit, never truncates. Doubling is preferred over squaring because it
// reuses the same carry primitive the scanner runs, and the scan consumes
// every intermediate power anyway.
BigDecimalNat pow2_exact(uint64_t p, uint64_t exponent_limit = kExactExponentLimit);

enum class VerifyStatus { confirmed_solution, refuted };

// Decides whether 2^n has all even digits, exactly. Also cross-checks the
// equivalent formulation on 2^(n-1) for n >= 1 and refuses to answer if the
// two ever disagree, since that would mean the digit logic is broken.
VerifyStatus verify_even_power(uint64_t n, uint64_t exponent_limit = kExactExponentLimit);

struct ScanExactResult {
  std::vector<uint64_t> even_n;  // n with all digits of 2^n even
  std::vector<uint64_t> le4_p;   // p with all digits of 2^p <= 4
  uint64_t n_max = 0;
};

// Walks one doubling chain over n in [0, n_max] testing both digit
// predicates. Since doubling a number whose digits are all <= 4 never
// carries, the lists must satisfy even_n = {p+1 : p in le4_p, p+1 <= n_max};
// any violation throws std::logic_error.
ScanExactResult scan_exact(uint64_t n_max, uint64_t exponent_limit = kExactExponentLimit);

}  // namespace evenpow
