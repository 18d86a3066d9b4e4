#pragma once

namespace phonent::constants {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kSpeedOfLight = 299792458.0;    // m/s
inline constexpr double kHelium4Mass = 6.6464731e-27;   // kg

inline constexpr double kEarthGm = 3.986004418e14;      // m^3/s^2
inline constexpr double kEarthRadius = 6.371e6;         // m
inline constexpr double kLeoAltitude = 400.0e3;         // m
inline constexpr double kLeoRadius = kEarthRadius + kLeoAltitude;

/// Total velocity change a CanX-4/5 class nanosatellite can deliver.
inline constexpr double kThrusterCapability = 11.1;     // m/s

}  // namespace phonent::constants
