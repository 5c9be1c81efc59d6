#pragma once

namespace infogeo {

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace infogeo
