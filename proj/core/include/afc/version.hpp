#pragma once

namespace afc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace afc
