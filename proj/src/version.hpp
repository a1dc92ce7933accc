#pragma once

namespace ffd {

inline constexpr const char* kToolName = "ffd";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace ffd
