// SPDX-License-Identifier: Apache-2.0
//
// Pilot-based linear-MMSE channel estimation and narrowband-to-wideband CSI
// interpolation.
#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace raqr::estimate {

using complexd = std::complex<double>;

struct PilotConfig {
  int num_pilot_symbols = 1;                 // pilot slots per user block
  std::vector<int> pilot_subcarrier_indices; // within the subcarrier grid
  double pilot_power = 1.0;                  // relative to data power

  void validate(int num_subcarriers) const {
    if (num_pilot_symbols < 1)
      throw std::domain_error("PilotConfig: need at least one pilot symbol");
    if (pilot_power <= 0) throw std::domain_error("PilotConfig: pilot power must be positive");
    for (int idx : pilot_subcarrier_indices)
      if (idx < 0 || idx >= num_subcarriers)
        throw std::domain_error("PilotConfig: pilot subcarrier index outside the grid");
  }
};

struct MmseEstimate {
  Eigen::MatrixXcd channel;    // M x K estimated gains
  double analytic_mse = 0.0;   // trace of the posterior covariance, all sensors
  double per_sensor_mse = 0.0; // trace of the per-sensor posterior covariance
};

// Linear-MMSE estimate of H from Y = H P + N, with independent rows
// h_m ~ CN(0, prior) and N iid CN(0, noise_variance).
//
//   hhat_m = C A^H (A C A^H + s2 I)^-1 y_m,   A = P^T
inline MmseEstimate mmse_channel_estimate(const Eigen::MatrixXcd& received_pilots,
                                          const Eigen::MatrixXcd& pilot_matrix,
                                          double noise_variance,
                                          const Eigen::MatrixXcd& channel_prior_covariance) {
  if (noise_variance <= 0)
    throw std::domain_error("mmse_channel_estimate: noise variance must be positive");
  const auto m = received_pilots.rows();
  const auto np = received_pilots.cols();
  const auto k = pilot_matrix.rows();
  if (pilot_matrix.cols() != np)
    throw std::invalid_argument("mmse_channel_estimate: pilot matrix has wrong number of slots");
  if (channel_prior_covariance.rows() != k || channel_prior_covariance.cols() != k)
    throw std::invalid_argument("mmse_channel_estimate: prior covariance has wrong dimensions");

  const Eigen::MatrixXcd a = pilot_matrix.transpose(); // Np x K
  const Eigen::MatrixXcd& c = channel_prior_covariance;
  Eigen::MatrixXcd gram = a * c * a.adjoint();
  gram.diagonal().array() += noise_variance;
  const Eigen::MatrixXcd gram_inv = gram.llt().solve(Eigen::MatrixXcd::Identity(np, np));
  const Eigen::MatrixXcd w = c * a.adjoint() * gram_inv; // K x Np

  MmseEstimate est;
  est.channel = (w * received_pilots.transpose()).transpose(); // M x K
  const Eigen::MatrixXcd post = c - w * a * c;
  est.per_sensor_mse = post.real().trace();
  est.analytic_mse = est.per_sensor_mse * static_cast<double>(m);
  return est;
}

struct InterpolatedCsi {
  std::vector<Eigen::MatrixXcd> per_subcarrier;
  bool single_pilot_warning = false;
};

// Complex-linear interpolation per matrix entry between pilot subcarriers;
// edges are held constant.  Exact whenever entries are linear in the index.
inline InterpolatedCsi interpolate_csi(const std::map<int, Eigen::MatrixXcd>& pilot_estimates,
                                       int num_subcarriers) {
  if (pilot_estimates.empty())
    throw std::invalid_argument("interpolate_csi: no pilot subcarrier estimates");
  for (const auto& [idx, h] : pilot_estimates)
    if (idx < 0 || idx >= num_subcarriers)
      throw std::invalid_argument("interpolate_csi: pilot index outside the grid");

  InterpolatedCsi out;
  out.per_subcarrier.resize(num_subcarriers);

  if (pilot_estimates.size() == 1) {
    out.single_pilot_warning = true;
    for (int n = 0; n < num_subcarriers; ++n)
      out.per_subcarrier[n] = pilot_estimates.begin()->second;
    return out;
  }

  auto right = pilot_estimates.begin();
  auto left = right++;
  for (int n = 0; n < num_subcarriers; ++n) {
    if (n <= left->first) {
      out.per_subcarrier[n] = left->second;
      continue;
    }
    while (n > right->first && std::next(right) != pilot_estimates.end()) {
      left = right;
      ++right;
    }
    if (n >= right->first) {
      out.per_subcarrier[n] = right->second;
      continue;
    }
    const double t = static_cast<double>(n - left->first) /
                     static_cast<double>(right->first - left->first);
    out.per_subcarrier[n] = (1.0 - t) * left->second + t * right->second;
  }
  return out;
}

} // namespace raqr::estimate
