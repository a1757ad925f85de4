#pragma once

namespace bindft {

inline constexpr const char* kVersion = "0.1.0";

} // namespace bindft
