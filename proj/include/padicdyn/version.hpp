#pragma once

namespace padicdyn {

inline constexpr const char* kToolName = "padic-dyn";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

} // namespace padicdyn
