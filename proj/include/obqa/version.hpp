#pragma once

namespace obqa {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "obqa";

}  // namespace obqa
