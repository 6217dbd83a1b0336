#pragma once

namespace malfare {
inline constexpr const char* kVersion = "0.1.0";
}
