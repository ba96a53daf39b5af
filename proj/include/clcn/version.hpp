#pragma once

namespace clcn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace clcn
