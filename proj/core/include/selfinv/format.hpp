#pragma once

#include <charconv>
#include <string>

namespace selfinv {

// Shortest decimal string that round-trips to the same double.
inline std::string fmt_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace selfinv
