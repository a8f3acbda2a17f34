#pragma once

namespace abcmeta {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace abcmeta
