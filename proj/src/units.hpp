// units.hpp — frequency/time conventions used across the library.
//
// All public parameters are quoted the way hardware people quote them:
// frequencies as nu = omega/2pi in MHz, times in ns. Internally everything
// is angular (rad/ns), so H/hbar entries and times multiply directly.

#pragma once

#include <numbers>

namespace ffd {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// nu [MHz] -> omega [rad/ns]
inline constexpr double angular_from_mhz(double nu_mhz) {
    return two_pi * 1e-3 * nu_mhz;
}

// omega [rad/ns] -> nu [MHz]
inline constexpr double mhz_from_angular(double omega_rad_ns) {
    return omega_rad_ns / (two_pi * 1e-3);
}

} // namespace ffd
