#pragma once

#include <stdexcept>
#include <string>

namespace evenpow {

// Thrown when a computation would exceed a configured resource limit
// (big-number size, enumeration depth, and the like). Distinct from
// std::invalid_argument so callers can tell "raise the limit" apart
// from "the request itself is malformed".
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evenpow
