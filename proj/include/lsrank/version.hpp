#pragma once

namespace lsrank {
inline constexpr const char* kVersion = "0.1.0";
}
