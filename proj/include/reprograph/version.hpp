#pragma once

namespace reprograph {

inline constexpr const char* kVersion = "0.1.0";

} // namespace reprograph
