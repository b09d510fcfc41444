#pragma once

namespace aeids {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aeids
