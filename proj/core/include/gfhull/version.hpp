#pragma once

namespace gfhull {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gfhull
