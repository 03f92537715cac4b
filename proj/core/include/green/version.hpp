#pragma once

namespace green {

inline constexpr const char* version = "0.1.0";

}  // namespace green
