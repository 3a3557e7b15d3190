#pragma once

namespace toepspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace toepspec
