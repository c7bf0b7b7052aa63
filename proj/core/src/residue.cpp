#include "evenpow/residue.hpp"

#include <stdexcept>

namespace evenpow {

namespace {

constexpr uint64_t kPow10[19] = {
    1ull,
    10ull,
    100ull,
    1000ull,
    10000ull,
    100000ull,
    1000000ull,
    10000000ull,
    100000000ull,
    1000000000ull,
    10000000000ull,
    100000000000ull,
    1000000000000ull,
    10000000000000ull,
    100000000000000ull,
    1000000000000000ull,
    10000000000000000ull,
    100000000000000000ull,
    1000000000000000000ull,
};

}  // namespace

Residue::Residue(int digits) {
  if (digits < kMinDigits || digits > kMaxDigits)
    throw std::invalid_argument("Residue: digits must be in [1, 72], got " +
                                std::to_string(digits));
  digits_ = digits;
  nlimbs_ = (digits + kLimbDigits - 1) / kLimbDigits;
  top_cap_ = kPow10[digits - kLimbDigits * (nlimbs_ - 1)];
}

Residue Residue::from_u64(uint64_t value, int digits) {
  Residue r(digits);
  r.limbs_[0] = value % kLimbBase;
  uint64_t hi = value / kLimbBase;
  if (r.nlimbs_ == 1) {
    r.limbs_[0] %= r.top_cap_;
  } else {
    r.limbs_[1] = (r.nlimbs_ == 2) ? hi % r.top_cap_ : hi;
  }
  return r;
}

Residue Residue::from_decimal_string(const std::string& s, int digits) {
  Residue r(digits);
  if (s.empty() || s.size() > static_cast<size_t>(digits))
    throw std::invalid_argument("Residue: digit string must have 1.." +
                                std::to_string(digits) + " characters");
  for (char ch : s)
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("Residue: non-digit character in input");
  // walk from the right in 18-digit chunks
  int pos = static_cast<int>(s.size());
  int li = 0;
  while (pos > 0) {
    int take = pos < kLimbDigits ? pos : kLimbDigits;
    uint64_t v = 0;
    for (int i = pos - take; i < pos; ++i) v = v * 10 + uint64_t(s[i] - '0');
    r.limbs_[li++] = v;
    pos -= take;
  }
  return r;
}

std::string Residue::to_decimal_string() const {
  std::string out(static_cast<size_t>(digits_), '0');
  // limb li holds digit positions 18*li .. 18*li+take-1, counted from the right
  for (int li = 0; li < nlimbs_; ++li) {
    uint64_t v = limbs_[li];
    int take = (li == nlimbs_ - 1) ? digits_ - kLimbDigits * (nlimbs_ - 1)
                                   : kLimbDigits;
    for (int i = 0; i < take; ++i) {
      out[digits_ - 1 - (kLimbDigits * li + i)] = char('0' + v % 10);
      v /= 10;
    }
  }
  return out;
}

Residue double_mod(const Residue& r) {
  Residue out = r;
  uint64_t carry = 0;
  for (int i = 0; i < out.nlimbs_; ++i) {
    uint64_t t = out.limbs_[i] * 2 + carry;  // < 2*10^18 < 2^63
    carry = t >= Residue::kLimbBase;
    if (carry) t -= Residue::kLimbBase;
    out.limbs_[i] = t;
  }
  // the doubled top limb is < 2*top_cap, so one conditional subtract reduces it
  if (out.limbs_[out.nlimbs_ - 1] >= out.top_cap_)
    out.limbs_[out.nlimbs_ - 1] -= out.top_cap_;
  return out;
}

Residue mul_mod(const Residue& a, const Residue& b) {
  if (a.digits_ != b.digits_)
    throw std::invalid_argument("mul_mod: mixed digit widths");
  using u128 = unsigned __int128;
  Residue out(a.digits_);
  const int L = a.nlimbs_;
  u128 carry = 0;
  for (int col = 0; col < L; ++col) {
    u128 acc = carry;
    for (int i = 0; i <= col; ++i)
      acc += static_cast<u128>(a.limbs_[i]) * b.limbs_[col - i];
    out.limbs_[col] = static_cast<uint64_t>(acc % Residue::kLimbBase);
    carry = acc / Residue::kLimbBase;
  }
  out.limbs_[L - 1] %= out.top_cap_;
  return out;
}

Residue pow2_mod(uint64_t p, int digits) {
  Residue result = Residue::from_u64(1, digits);
  Residue base = Residue::from_u64(2, digits);
  while (p != 0) {
    if (p & 1) result = mul_mod(result, base);
    p >>= 1;
    if (p != 0) base = mul_mod(base, base);
  }
  return result;
}

bool digits_all_le4(const Residue& r) {
  for (int li = 0; li < r.limb_count(); ++li) {
    uint64_t v = r.limb(li);
    // digits above the most significant nonzero one are 0, no need to visit them
    while (v != 0) {
      if (v % 10 > 4) return false;
      v /= 10;
    }
  }
  return true;
}

}  // namespace evenpow
