#pragma once

#include <numbers>

namespace bellxs {

inline constexpr double kPi = std::numbers::pi;

[[nodiscard]] constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
[[nodiscard]] constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

}  // namespace bellxs
