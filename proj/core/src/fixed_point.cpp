#include "evenpow/fixed_point.hpp"

#include <stdexcept>

namespace evenpow {

Fixed256 Fixed256::parse_unit_fraction(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Fixed256: empty string");
  size_t dot = s.find('.');
  std::string int_part = (dot == std::string::npos) ? s : s.substr(0, dot);
  std::string frac_part = (dot == std::string::npos) ? "" : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("Fixed256: '.' alone is not a number");
  for (char ch : int_part)
    if (ch != '0')
      throw std::invalid_argument("Fixed256: value must lie in [0,1): " + s);
  for (char ch : frac_part)
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("Fixed256: bad character in: " + s);

  // Horner from the last digit: v <- (v + digit*2^256) / 10, so after
  // processing digit d_1..d_m the words hold floor(0.d_1...d_m * 2^256)
  // up to m units in the last place (each division truncates).
  Fixed256 out;
  for (size_t i = frac_part.size(); i-- > 0;) {
    uint64_t limbs5[5] = {out.w[0], out.w[1], out.w[2], out.w[3],
                          uint64_t(frac_part[i] - '0')};
    unsigned __int128 rem = 0;
    for (int j = 4; j >= 0; --j) {
      unsigned __int128 cur = (rem << 64) | limbs5[j];
      limbs5[j] = static_cast<uint64_t>(cur / 10);
      rem = cur % 10;
    }
    // limbs5[4] is zero again: (9*2^256 + (2^256-1)) / 10 < 2^256
    out.w = {limbs5[0], limbs5[1], limbs5[2], limbs5[3]};
  }
  return out;
}

}  // namespace evenpow
