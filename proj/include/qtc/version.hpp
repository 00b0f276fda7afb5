#pragma once

namespace qtc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qtc
