#pragma once

namespace selfinv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace selfinv
