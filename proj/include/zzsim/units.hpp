#pragma once

#include <numbers>

// Internal frequencies are angular (rad/s) and times are seconds. These helpers
// are the only place the 2*pi conversion happens.
namespace zzsim::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double from_ghz(double ghz) { return two_pi * ghz * 1e9; }
constexpr double from_mhz(double mhz) { return two_pi * mhz * 1e6; }
constexpr double from_khz(double khz) { return two_pi * khz * 1e3; }
constexpr double from_hz(double hz) { return two_pi * hz; }

constexpr double to_ghz(double rad_per_s) { return rad_per_s / two_pi * 1e-9; }
constexpr double to_mhz(double rad_per_s) { return rad_per_s / two_pi * 1e-6; }
constexpr double to_hz(double rad_per_s) { return rad_per_s / two_pi; }

constexpr double from_us(double us) { return us * 1e-6; }
constexpr double from_ns(double ns) { return ns * 1e-9; }
constexpr double to_us(double s) { return s * 1e6; }

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K

}  // namespace zzsim::units
