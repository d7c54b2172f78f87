// version.hpp — Tool version stamped into metadata records

#pragma once

namespace synthdim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace synthdim
