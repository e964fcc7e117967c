#pragma once

namespace roisac {

// Propagation speed used for all time-of-flight <-> distance conversions.
// Round-trip convention: d = c * tof / 2.
inline constexpr double kSpeedOfLight = 2.998e8; // m/s

inline constexpr double kElementaryCharge = 1.602176634e-19; // C

inline constexpr double kPi = 3.14159265358979323846;

} // namespace roisac
