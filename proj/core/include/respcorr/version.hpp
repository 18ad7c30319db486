#pragma once

namespace respcorr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace respcorr
