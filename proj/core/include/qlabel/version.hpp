#pragma once

namespace qlabel {

inline constexpr const char* kToolName = "qlabel";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qlabel
