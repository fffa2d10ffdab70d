// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace raqr::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double speed_of_light = 2.99792458e8;       // m/s
inline constexpr double planck = 6.62607015e-34;             // J s
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double boltzmann = 1.380649e-23;            // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double bohr_radius = 5.29177210903e-11;     // m
inline constexpr double vacuum_impedance = 376.730313668;    // Ohm
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Dipole moments in atomic tables are quoted in units of q*a0.
inline constexpr double dipole_atomic_unit = elementary_charge * bohr_radius; // C m

} // namespace raqr::constants
