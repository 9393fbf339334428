#pragma once

namespace rrsim {
inline constexpr const char* kVersion = "0.1.0";
}
