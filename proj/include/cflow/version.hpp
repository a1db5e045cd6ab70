#pragma once

namespace cflow {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cflow
