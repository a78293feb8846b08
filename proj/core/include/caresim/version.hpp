#pragma once

namespace caresim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace caresim
