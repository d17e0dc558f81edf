#pragma once

namespace stochorder {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stochorder
