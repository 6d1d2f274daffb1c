#pragma once

namespace hotlat {

inline constexpr const char* kToolName = "hotlat";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kConfigSchemaVersion = 1;

}  // namespace hotlat
