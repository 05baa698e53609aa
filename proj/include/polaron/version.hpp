#pragma once

namespace polaron {

inline constexpr const char* kVersion = "polaron 0.1.0";

}  // namespace polaron
