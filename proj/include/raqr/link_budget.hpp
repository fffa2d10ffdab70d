// SPDX-License-Identifier: Apache-2.0
//
// Uplink budget: free-space path gain, incident field amplitude at the
// satellite, and per-receiver SNR for the classical RF chain and the RAQR.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "raqr/constants.hpp"
#include "raqr/units.hpp"

namespace raqr::link {

enum class OrbitClass { LEO, MEO, GEO };

inline std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::LEO: return "LEO";
    case OrbitClass::MEO: return "MEO";
    default: return "GEO";
  }
}

inline constexpr double min_orbit_distance_m = 160e3;
inline constexpr double geo_distance_m = 35786e3;
inline constexpr double leo_limit_m = 2000e3;

inline OrbitClass orbit_class_of(double distance_m) {
  if (distance_m <= leo_limit_m) return OrbitClass::LEO;
  if (distance_m < geo_distance_m) return OrbitClass::MEO;
  return OrbitClass::GEO;
}

struct LinkScenario {
  double distance = 0.0;          // m
  double carrier_frequency = 0.0; // Hz
  double bandwidth = 0.0;         // Hz
  double eirp_dbw = 0.0;          // dBW

  OrbitClass orbit_class() const { return orbit_class_of(distance); }

  void validate() const {
    if (distance <= 0) throw std::domain_error("LinkScenario: distance must be positive");
    if (carrier_frequency <= 0) throw std::domain_error("LinkScenario: carrier must be positive");
    if (bandwidth <= 0) throw std::domain_error("LinkScenario: bandwidth must be positive");
  }
};

struct ClassicalRxChain {
  double antenna_gain_dbi = 0.0;
  double antenna_efficiency = 1.0;      // (0,1]
  double noise_figure_db = 0.0;
  double lna_gain_db = 0.0;             // applies to signal and noise alike
  double lna_noise_temperature = 0.0;   // K
  double ambient_temperature = 290.0;   // K

  void validate() const {
    if (antenna_efficiency <= 0 || antenna_efficiency > 1)
      throw std::domain_error("ClassicalRxChain: efficiency must be in (0,1]");
    if (lna_noise_temperature <= 0 || ambient_temperature <= 0)
      throw std::domain_error("ClassicalRxChain: temperatures must be positive");
  }
};

// FSPL expressed as a (negative) gain:
//   20 log10(c/4pi) + 20 log10(1/d) + 20 log10(1/fc)
inline double path_gain_db(double distance_m, double carrier_hz) {
  if (distance_m <= 0 || carrier_hz <= 0)
    throw std::domain_error("path_gain_db: inputs must be positive");
  return 20.0 * std::log10(constants::speed_of_light / (4.0 * constants::pi)) +
         20.0 * std::log10(1.0 / distance_m) + 20.0 * std::log10(1.0 / carrier_hz);
}

inline double path_gain_linear(double distance_m, double carrier_hz) {
  return db_to_linear(path_gain_db(distance_m, carrier_hz));
}

// Power density at the receiver, W/m^2.
inline double power_density(const LinkScenario& sc) {
  sc.validate();
  const double eirp = db_to_linear(sc.eirp_dbw);
  return eirp / (4.0 * constants::pi * sc.distance * sc.distance);
}

// Peak incident field amplitude, V/m: E = sqrt(2 S Z0).
inline double incident_field_amplitude(const LinkScenario& sc) {
  return std::sqrt(2.0 * power_density(sc) * constants::vacuum_impedance);
}

// Effective aperture of one classical array element, m^2.
inline double effective_aperture(const ClassicalRxChain& chain, double carrier_hz) {
  const double lambda = constants::speed_of_light / carrier_hz;
  return chain.antenna_efficiency * db_to_linear(chain.antenna_gain_dbi) * lambda * lambda /
         (4.0 * constants::pi);
}

// Classical per-element SNR (linear).  Independent of LNA gain: the gain
// amplifies signal and input-referred noise alike.
inline double classical_rx_snr_linear(const LinkScenario& sc, const ClassicalRxChain& chain) {
  sc.validate();
  chain.validate();
  const double p_rx = power_density(sc) * effective_aperture(chain, sc.carrier_frequency);
  const double noise = constants::boltzmann * chain.ambient_temperature * sc.bandwidth *
                       db_to_linear(chain.noise_figure_db);
  return p_rx / noise;
}

inline double classical_rx_snr_db(const LinkScenario& sc, const ClassicalRxChain& chain) {
  return linear_to_db(classical_rx_snr_linear(sc, chain));
}

// RAQR per-sensor SNR (linear): SNR = (E / (sensitivity * sqrt(B)))^2.
inline double raqr_rx_snr_linear(const LinkScenario& sc, double sensitivity) {
  if (sensitivity <= 0) throw std::domain_error("raqr_rx_snr: sensitivity must be positive");
  const double e = incident_field_amplitude(sc);
  const double noise_field = sensitivity * std::sqrt(sc.bandwidth);
  const double ratio = e / noise_field;
  return ratio * ratio;
}

inline double raqr_rx_snr_db(const LinkScenario& sc, double sensitivity) {
  return linear_to_db(raqr_rx_snr_linear(sc, sensitivity));
}

// ---------------------------------------------------------------------------
// Unified receiver abstraction
// ---------------------------------------------------------------------------

// Both chains reduce to "received SNR = EIRP * path_gain / noise_equiv":
// noise_equiv is an equivalent noise referred to the isotropic-received power
// so the detection layer can treat the two receivers uniformly.
struct ReceiverModel {
  enum class Kind { Classical, Raqr };

  Kind kind = Kind::Classical;
  std::string label;
  double noise_equiv = 0.0; // W, equivalent noise power per sensor

  static ReceiverModel classical(const ClassicalRxChain& chain, double carrier_hz,
                                 double bandwidth_hz) {
    chain.validate();
    ReceiverModel m;
    m.kind = Kind::Classical;
    m.label = "classical";
    const double lambda = constants::speed_of_light / carrier_hz;
    const double aperture_gain =
        effective_aperture(chain, carrier_hz) * 4.0 * constants::pi / (lambda * lambda);
    m.noise_equiv = constants::boltzmann * chain.ambient_temperature * bandwidth_hz *
                    db_to_linear(chain.noise_figure_db) / aperture_gain;
    return m;
  }

  static ReceiverModel raqr(double sensitivity, double carrier_hz, double bandwidth_hz) {
    if (sensitivity <= 0) throw std::domain_error("ReceiverModel: sensitivity must be positive");
    ReceiverModel m;
    m.kind = Kind::Raqr;
    m.label = "raqr";
    const double lambda = constants::speed_of_light / carrier_hz;
    // E^2/(2 Z0) is the incident power density; lambda^2/(4 pi) the isotropic
    // collecting aperture that converts it to the common power reference.
    m.noise_equiv = sensitivity * sensitivity * bandwidth_hz / (2.0 * constants::vacuum_impedance) *
                    lambda * lambda / (4.0 * constants::pi);
    return m;
  }

  // per-sensor SNR (linear) at a given scenario
  double snr_linear(const LinkScenario& sc) const {
    sc.validate();
    const double eirp = db_to_linear(sc.eirp_dbw);
    return eirp * path_gain_linear(sc.distance, sc.carrier_frequency) / noise_equiv;
  }

  double snr_db(const LinkScenario& sc) const { return linear_to_db(snr_linear(sc)); }
};

} // namespace raqr::link
