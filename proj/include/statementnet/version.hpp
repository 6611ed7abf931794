#pragma once

namespace statementnet {

inline constexpr const char* kToolName = "statement-net";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace statementnet
