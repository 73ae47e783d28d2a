#pragma once

namespace specmosaic {

inline constexpr const char* kToolVersion = "specmosaic 1.0.0";

}  // namespace specmosaic
