#pragma once

namespace swlab {
inline constexpr const char* kVersion = "0.1.0";
}
