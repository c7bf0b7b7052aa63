#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace evenpow {

// Fraction in [0,1) with 256 fractional bits: value = W / 2^256 where W is
// the four little-endian 64-bit words below. Enough headroom that k copies
// of a stored constant accumulate at most k units of last-place error, which
// for k up to 10^18 still leaves ~196 correct bits.
struct Fixed256 {
  std::array<uint64_t, 4> w{};

  static Fixed256 from_u64_fraction(uint64_t v) {  // v / 2^64
    Fixed256 f;
    f.w[3] = v;
    return f;
  }

  // Parses "0", "0.30103", ".5" and the like; the value must lie in [0,1),
  // so the integer part, if present, has to be all zeros. Truncates toward
  // zero; error under one part in 2^250 for inputs of sane length.
  static Fixed256 parse_unit_fraction(const std::string& s);

  double to_double() const {
    return static_cast<double>(w[3]) * 0x1p-64 +
           static_cast<double>(w[2]) * 0x1p-128 +
           static_cast<double>(w[1]) * 0x1p-192 +
           static_cast<double>(w[0]) * 0x1p-256;
  }

  bool operator==(const Fixed256&) const = default;
};

// a += b, returning the carry out of the unit position (0 or 1). The carry
// is exactly the event "the sum crossed an integer boundary", which is what
// lets a running sum of log10(2) count decimal digits of 2^k.
inline unsigned add_wrap(Fixed256& a, const Fixed256& b) {
  unsigned carry = 0;
  for (int i = 0; i < 4; ++i) {
    uint64_t s = a.w[i] + b.w[i];
    unsigned c = s < a.w[i];
    a.w[i] = s + carry;
    carry = c | (a.w[i] < s);
  }
  return carry;
}

// floor(log10(2) * 2^256), verified two independent ways before being
// frozen here (a binary-search against exact powers of two, and a
// square-and-compare spigot; both give the same 256-bit integer).
inline constexpr Fixed256 kLog10TwoFrac{{0xc52f37935be631e5ull,
                                         0x13569862a1e8f9a4ull,
                                         0x47c4acd605be48bcull,
                                         0x4d104d427de7fbccull}};

}  // namespace evenpow
