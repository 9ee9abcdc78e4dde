#pragma once

namespace gflbs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gflbs
