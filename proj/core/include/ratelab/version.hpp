#pragma once

namespace ratelab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ratelab
