#pragma once

namespace qspread {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qspread
