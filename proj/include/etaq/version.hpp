#pragma once

namespace etaq {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever the QSER1 payload semantics or the expansion kernel change
// in a way that invalidates cached dumps.
inline constexpr unsigned char kCacheFormatVersion = 1;

}  // namespace etaq
