#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace evenpow {

// Residues mod 10^D, 1 <= D <= 72, held in base-10^18 limbs, least
// significant limb first. The top limb lives mod 10^(D - 18*(L-1)) so the
// represented value is always fully reduced. Base 10^18 keeps every decimal
// digit addressable by div/mod without any binary-to-decimal conversion,
// which is what the digit filters need in their inner loop.
class Residue {
 public:
  static constexpr int kMinDigits = 1;
  static constexpr int kMaxDigits = 72;
  static constexpr int kMaxLimbs = 4;
  static constexpr uint64_t kLimbBase = 1000000000000000000ull;  // 10^18
  static constexpr int kLimbDigits = 18;

  // Zero residue with the given digit width.
  explicit Residue(int digits);

  static Residue from_u64(uint64_t value, int digits);
  // Digit string, most significant first, length <= digits.
  static Residue from_decimal_string(const std::string& s, int digits);

  int digits() const { return digits_; }
  int limb_count() const { return nlimbs_; }
  uint64_t limb(int i) const { return limbs_[i]; }

  // Zero-padded to exactly digits() characters.
  std::string to_decimal_string() const;

  bool operator==(const Residue& other) const = default;

 private:
  std::array<uint64_t, kMaxLimbs> limbs_{};
  int digits_ = 0;
  int nlimbs_ = 0;
  uint64_t top_cap_ = 0;  // 10^(digits - 18*(nlimbs-1)), modulus of the top limb

  friend Residue double_mod(const Residue& r);
  friend Residue mul_mod(const Residue& a, const Residue& b);
};

// 2r mod 10^D. One pass of limb doubling with carry; the carry out of the
// top limb is discarded by the top-limb cap.
Residue double_mod(const Residue& r);

// a*b mod 10^D. Schoolbook columns accumulated in unsigned __int128; only
// the low L columns are formed since higher ones vanish mod 10^D.
Residue mul_mod(const Residue& a, const Residue& b);

// 2^p mod 10^D by binary exponentiation. O(log p) mul_mod calls.
Residue pow2_mod(uint64_t p, int digits);

// True iff every one of the D tracked digits is <= 4. Scans least
// significant digit first and bails on the first digit >= 5, so on random
// input it inspects about 10/6 digits before returning false.
bool digits_all_le4(const Residue& r);

}  // namespace evenpow
