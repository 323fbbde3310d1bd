#pragma once

namespace blochlu {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blochlu
