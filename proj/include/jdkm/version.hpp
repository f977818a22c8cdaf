#pragma once

namespace jdkm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace jdkm
