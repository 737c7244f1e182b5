#pragma once

#include <numbers>

namespace tipanchor {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

constexpr double DegreesToRadians(double degrees) { return degrees * (kPi / 180.0); }
constexpr double RadiansToDegrees(double radians) { return radians * (180.0 / kPi); }

}  // namespace tipanchor
