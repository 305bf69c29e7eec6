#pragma once

namespace hankelrec {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kVersionString = "hankelrec 1.0.0";

}  // namespace hankelrec
