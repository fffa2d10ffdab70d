// SPDX-License-Identifier: Apache-2.0
//
// LoS uplink channel from K single-antenna ground users to an M-sensor
// uniform linear array, narrowband and per-subcarrier wideband variants.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "raqr/constants.hpp"
#include "raqr/link_budget.hpp"

namespace raqr::mimo {

using complexd = std::complex<double>;

struct UlaGeometry {
  int num_sensors = 100;
  double element_spacing = 0.0; // m; 0 means half-wavelength at the carrier
  double boresight = 0.0;       // rad

  void validate() const {
    if (num_sensors < 1) throw std::domain_error("UlaGeometry: need at least one sensor");
    if (element_spacing < 0) throw std::domain_error("UlaGeometry: spacing must be non-negative");
  }

  double spacing_at(double carrier_hz) const {
    return element_spacing > 0 ? element_spacing
                               : 0.5 * constants::speed_of_light / carrier_hz;
  }
};

struct ChannelMatrix {
  Eigen::MatrixXcd gains;                       // M x K narrowband
  std::vector<Eigen::MatrixXcd> per_subcarrier; // optional, Nsc entries of M x K
  std::vector<double> distances;                // m, per user
  std::vector<double> angles;                   // rad, per user
  bool rank_warning = false;                    // duplicate user angles

  int sensors() const { return static_cast<int>(gains.rows()); }
  int users() const { return static_cast<int>(gains.cols()); }
};

// a_m = exp(-j 2 pi (m d / lambda) sin(theta)), m = 0..M-1; a(0) = all-ones.
inline Eigen::VectorXcd steering_vector(const UlaGeometry& geom, double angle_of_arrival,
                                        double carrier_hz) {
  geom.validate();
  if (std::abs(angle_of_arrival) >= constants::pi / 2)
    throw std::domain_error("steering_vector: |angle| must be < pi/2");
  const double lambda = constants::speed_of_light / carrier_hz;
  const double d = geom.spacing_at(carrier_hz);
  const double phase_step = -constants::two_pi * d / lambda *
                            std::sin(angle_of_arrival - geom.boresight);
  Eigen::VectorXcd a(geom.num_sensors);
  for (int m = 0; m < geom.num_sensors; ++m)
    a(m) = std::polar(1.0, phase_step * m);
  return a;
}

// Column k = sqrt(path gain_k) e^{j phi_k} a(theta_k); phi_k from the
// propagation delay at the carrier, referenced to sensor 0.
inline ChannelMatrix los_channel(const UlaGeometry& geom,
                                 const std::vector<link::LinkScenario>& scenarios,
                                 const std::vector<double>& angles) {
  geom.validate();
  if (scenarios.empty() || scenarios.size() != angles.size())
    throw std::invalid_argument("los_channel: need one scenario and angle per user");

  const int m = geom.num_sensors;
  const int k = static_cast<int>(scenarios.size());
  ChannelMatrix ch;
  ch.gains.resize(m, k);
  ch.distances.resize(k);
  ch.angles = angles;

  for (int u = 0; u < k; ++u) {
    const auto& sc = scenarios[u];
    sc.validate();
    const double g = link::path_gain_linear(sc.distance, sc.carrier_frequency);
    const double phase = -constants::two_pi * sc.carrier_frequency * sc.distance /
                         constants::speed_of_light;
    const complexd scale = std::sqrt(g) * std::polar(1.0, std::remainder(phase, constants::two_pi));
    ch.gains.col(u) = scale * steering_vector(geom, angles[u], sc.carrier_frequency);
    ch.distances[u] = sc.distance;
  }

  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if (angles[u] == angles[v]) ch.rank_warning = true;
  return ch;
}

// H[n] = H  .*  exp(-j 2 pi n df tau_k) per column; subcarrier 0 equals the
// narrowband matrix, and no column norm ever changes.
inline ChannelMatrix wideband_extension(const ChannelMatrix& narrowband, int num_subcarriers,
                                        double subcarrier_spacing_hz,
                                        const std::vector<double>& delays) {
  if (num_subcarriers < 2) throw std::domain_error("wideband_extension: need >= 2 subcarriers");
  if (static_cast<int>(delays.size()) != narrowband.users())
    throw std::invalid_argument("wideband_extension: one delay per user required");

  ChannelMatrix ch = narrowband;
  ch.per_subcarrier.clear();
  ch.per_subcarrier.reserve(num_subcarriers);
  for (int n = 0; n < num_subcarriers; ++n) {
    Eigen::MatrixXcd h = narrowband.gains;
    for (int u = 0; u < narrowband.users(); ++u) {
      const double phase = -constants::two_pi * n * subcarrier_spacing_hz * delays[u];
      h.col(u) *= std::polar(1.0, phase);
    }
    ch.per_subcarrier.push_back(std::move(h));
  }
  return ch;
}

} // namespace raqr::mimo
