// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "raqr/constants.hpp"

namespace raqr {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
  if (x <= 0.0) throw std::domain_error("linear_to_db: non-positive value");
  return 10.0 * std::log10(x);
}

// Angular frequencies are rad/s everywhere inside the library; Hz appears
// only at I/O boundaries.
inline double hz_to_rad(double hz) { return constants::two_pi * hz; }
inline double rad_to_hz(double w) { return w / constants::two_pi; }

inline double wavelength_to_frequency(double lambda_m) {
  return constants::speed_of_light / lambda_m;
}

// (V/m)/sqrt(Hz)  ->  nV cm^-1 Hz^-1/2
inline double field_sensitivity_to_nv_cm(double v_per_m) { return v_per_m * 1e7; }

} // namespace raqr
