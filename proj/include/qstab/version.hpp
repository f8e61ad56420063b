#pragma once

namespace qstab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qstab
