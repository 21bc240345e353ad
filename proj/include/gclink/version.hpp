#pragma once

namespace gclink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gclink
