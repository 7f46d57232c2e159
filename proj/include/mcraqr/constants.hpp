#pragma once

#include <cmath>
#include <numbers>

namespace mcraqr::constants {

// CODATA 2018 values, SI units.
inline constexpr double hbar = 1.054571817e-34;      // J*s
inline constexpr double c0 = 299792458.0;            // m/s
inline constexpr double epsilon0 = 8.8541878128e-12; // F/m
inline constexpr double q_e = 1.602176634e-19;       // C
inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double a_0 = 5.29177210903e-11;     // m (Bohr radius)

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi = std::numbers::pi;

// Dipole moments are commonly quoted in units of e*a0.
inline constexpr double dipole_ea0 = q_e * a_0; // C*m per (e*a0)

// Hz (ordinary frequency) <-> rad/s (angular frequency).
inline constexpr double rad_from_hz(double f_hz) { return two_pi * f_hz; }
inline constexpr double hz_from_rad(double w) { return w / two_pi; }

} // namespace mcraqr::constants
