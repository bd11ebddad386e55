#pragma once

namespace tradenet {

inline constexpr const char* version = "1.0.0";

} // namespace tradenet
