#pragma once

namespace spoamp {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "spoamp";

}  // namespace spoamp
