#pragma once

namespace cucgarch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cucgarch
