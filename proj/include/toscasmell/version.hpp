#pragma once

namespace tsm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tsm
