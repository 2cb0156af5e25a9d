#pragma once

namespace tsqrt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tsqrt
