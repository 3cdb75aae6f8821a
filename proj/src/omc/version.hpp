#pragma once

namespace omc {
inline constexpr const char* kVersion = "0.1.0";
}
