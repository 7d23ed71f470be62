#pragma once

namespace rgg {

inline constexpr const char* kEngineName = "rgg-photon-stats";
inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace rgg
