#pragma once

namespace radius {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace radius
