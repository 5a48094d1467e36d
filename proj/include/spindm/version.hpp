#pragma once

namespace spindm {

inline constexpr const char* version = "0.1.0";

} // namespace spindm
