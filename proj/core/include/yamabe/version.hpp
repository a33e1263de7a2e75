#pragma once

namespace yamabe {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace yamabe
