#pragma once

namespace opstar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace opstar
