// SPDX-License-Identifier: Apache-2.0
//
// QPSK modulation, linear detection (MRC/ZF/MMSE) and Monte-Carlo BER
// measurement with Wilson confidence intervals.
#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "raqr/estimation.hpp"
#include "raqr/rng.hpp"

namespace raqr::detect {

using complexd = std::complex<double>;

enum class Detector { MRC, ZF, MMSE };

inline std::string to_string(Detector d) {
  switch (d) {
    case Detector::MRC: return "mrc";
    case Detector::ZF: return "zf";
    default: return "mmse";
  }
}

// ---------------------------------------------------------------------------
// QPSK with Gray mapping: bits (b0, b1) -> ((1-2 b0) + j (1-2 b1))/sqrt(2),
// so 00 maps to the (1+j)/sqrt(2) quadrant and adjacent symbols differ in
// exactly one bit.
// ---------------------------------------------------------------------------

inline complexd qpsk_map(int b0, int b1) {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return {(1 - 2 * b0) * inv_sqrt2, (1 - 2 * b1) * inv_sqrt2};
}

inline void qpsk_slice(complexd y, int& b0, int& b1) {
  b0 = y.real() < 0 ? 1 : 0;
  b1 = y.imag() < 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Linear detectors
// ---------------------------------------------------------------------------

class RankDeficientChannel : public std::runtime_error {
public:
  explicit RankDeficientChannel(const std::string& what) : std::runtime_error(what) {}
};

// Rows of the K x M combining matrix W for the chosen detector.
inline Eigen::MatrixXcd detector_weights(const Eigen::MatrixXcd& csi, double noise_variance,
                                         Detector det) {
  const auto k = csi.cols();
  const Eigen::MatrixXcd gram = csi.adjoint() * csi;
  switch (det) {
    case Detector::MRC:
      return csi.adjoint();
    case Detector::ZF: {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
      const double cond = svd.singularValues()(0) / svd.singularValues()(k - 1);
      if (!std::isfinite(cond) || cond > 1e12) {
        // name the offending user pairs (near-collinear columns)
        std::ostringstream msg;
        msg << "zero-forcing on a rank-deficient channel; near-collinear users:";
        for (int u = 0; u < k; ++u)
          for (int v = u + 1; v < k; ++v) {
            const double corr = std::abs(gram(u, v)) /
                                std::sqrt(gram(u, u).real() * gram(v, v).real());
            if (corr > 1.0 - 1e-9) msg << " (" << u << "," << v << ")";
          }
        throw RankDeficientChannel(msg.str());
      }
      return gram.ldlt().solve(csi.adjoint());
    }
    case Detector::MMSE:
    default: {
      Eigen::MatrixXcd reg = gram;
      reg.diagonal().array() += noise_variance;
      return reg.ldlt().solve(csi.adjoint());
    }
  }
}

// Post-equalization SINR per user for a given combining matrix.
inline Eigen::VectorXd post_equalization_sinr(const Eigen::MatrixXcd& w,
                                              const Eigen::MatrixXcd& channel,
                                              double noise_variance) {
  const auto k = channel.cols();
  const Eigen::MatrixXcd wh = w * channel; // K x K
  Eigen::VectorXd sinr(k);
  for (int u = 0; u < k; ++u) {
    const double sig = std::norm(wh(u, u));
    double interf = 0.0;
    for (int v = 0; v < k; ++v)
      if (v != u) interf += std::norm(wh(u, v));
    const double noise = noise_variance * w.row(u).squaredNorm();
    sinr(u) = sig / (interf + noise);
  }
  return sinr;
}

struct DetectionResult {
  Eigen::MatrixXcd symbols; // K x T hard decisions (unit-power QPSK points)
  Eigen::VectorXd sinr;     // per user
};

inline DetectionResult detect_symbols(const Eigen::MatrixXcd& received,
                                      const Eigen::MatrixXcd& csi, double noise_variance,
                                      Detector det) {
  if (received.rows() != csi.rows())
    throw std::invalid_argument("detect_symbols: received/CSI dimension mismatch");
  const Eigen::MatrixXcd w = detector_weights(csi, noise_variance, det);
  const Eigen::MatrixXcd z = w * received;
  DetectionResult res;
  res.symbols.resize(z.rows(), z.cols());
  for (Eigen::Index u = 0; u < z.rows(); ++u)
    for (Eigen::Index t = 0; t < z.cols(); ++t) {
      int b0, b1;
      qpsk_slice(z(u, t), b0, b1);
      res.symbols(u, t) = qpsk_map(b0, b1);
    }
  res.sinr = post_equalization_sinr(w, csi, noise_variance);
  return res;
}

// ---------------------------------------------------------------------------
// Wilson score interval
// ---------------------------------------------------------------------------

struct WilsonInterval {
  double center = 0.0;
  double halfwidth = 0.0;
  double lower() const { return std::max(0.0, center - halfwidth); }
  double upper() const { return std::min(1.0, center + halfwidth); }
};

inline WilsonInterval wilson_interval(long errors, long trials, double z) {
  if (trials <= 0) throw std::domain_error("wilson_interval: no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  WilsonInterval w;
  w.center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  w.halfwidth = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return w;
}

// ---------------------------------------------------------------------------
// Monte-Carlo BER engine
// ---------------------------------------------------------------------------

struct StoppingRule {
  long min_bit_errors = 100;
  long max_frames = 2000;
};

struct DetectionReport {
  std::string sweep_var;
  double sweep_value = 0.0;
  Detector detector = Detector::MMSE;
  std::string csi_mode = "perfect";
  double ber = 0.0;
  long bit_errors = 0;
  long bits_simulated = 0;
  double snr_point_db = 0.0;         // per-sensor SNR at this sweep point
  double ci_halfwidth = 0.0;         // Wilson, z = 1.96
  bool ber_is_upper_bound = false;   // zero errors at the frame cap
};

// One coherence block: fixed effective channel, pilot slots plus data slots,
// optionally spread over subcarriers with per-user delays.
struct FramePlan {
  Eigen::MatrixXcd channel;                      // M x K effective narrowband channel
  std::vector<Eigen::MatrixXcd> per_subcarrier;  // empty => narrowband
  estimate::PilotConfig pilots;
  double noise_variance = 1.0;
  int data_symbols = 100;   // per user per subcarrier
  Detector detector = Detector::MMSE;
  bool estimated_csi = false;
  Eigen::MatrixXcd prior;   // K x K prior covariance for MMSE estimation
};

namespace detail {

struct FrameOutcome {
  long bit_errors = 0;
  long bits = 0;
};

inline FrameOutcome run_frame(const FramePlan& plan, std::uint64_t seed, std::uint64_t point_tag,
                              std::uint64_t frame_index) {
  const int m = static_cast<int>(plan.channel.rows());
  const int k = static_cast<int>(plan.channel.cols());
  const bool wideband = !plan.per_subcarrier.empty();
  const int nsc = wideband ? static_cast<int>(plan.per_subcarrier.size()) : 1;
  const double sigma = plan.noise_variance;

  FrameRng bits_rng(seed, rng_stream::data_bits ^ point_tag, frame_index);
  FrameRng noise_rng(seed, rng_stream::noise ^ point_tag, frame_index);

  // CSI acquisition
  std::vector<Eigen::MatrixXcd> csi(nsc);
  if (!plan.estimated_csi) {
    for (int n = 0; n < nsc; ++n)
      csi[n] = wideband ? plan.per_subcarrier[n] : plan.channel;
  } else {
    // orthogonal pilots: user u transmits in slot u with amplitude
    // sqrt(pilot_power * num_pilot_symbols) folded into repeated slots
    const int np = std::max(plan.pilots.num_pilot_symbols, k);
    Eigen::MatrixXcd pilot(k, np);
    pilot.setZero();
    for (int u = 0; u < k; ++u)
      for (int s = u; s < np; s += k)
        pilot(u, s) = std::sqrt(plan.pilots.pilot_power);

    std::map<int, Eigen::MatrixXcd> pilot_estimates;
    std::vector<int> pilot_scs = plan.pilots.pilot_subcarrier_indices;
    if (!wideband || pilot_scs.empty()) pilot_scs = {0};
    for (int idx : pilot_scs) {
      const Eigen::MatrixXcd& h = wideband ? plan.per_subcarrier[idx] : plan.channel;
      Eigen::MatrixXcd y = h * pilot;
      for (int i = 0; i < m; ++i)
        for (int s = 0; s < np; ++s) y(i, s) += noise_rng.cnormal(sigma);
      pilot_estimates[idx] =
          estimate::mmse_channel_estimate(y, pilot, sigma, plan.prior).channel;
    }
    if (!wideband) {
      csi[0] = pilot_estimates.begin()->second;
    } else {
      csi = estimate::interpolate_csi(pilot_estimates, nsc).per_subcarrier;
    }
  }

  // data transmission
  FrameOutcome out;
  Eigen::MatrixXcd x(k, plan.data_symbols);
  std::vector<int> tx_bits(static_cast<std::size_t>(2 * k * plan.data_symbols));
  for (int n = 0; n < nsc; ++n) {
    const Eigen::MatrixXcd& h = wideband ? plan.per_subcarrier[n] : plan.channel;
    std::size_t bi = 0;
    for (int t = 0; t < plan.data_symbols; ++t)
      for (int u = 0; u < k; ++u) {
        const int b0 = bits_rng.bernoulli(0.5) ? 1 : 0;
        const int b1 = bits_rng.bernoulli(0.5) ? 1 : 0;
        tx_bits[bi++] = b0;
        tx_bits[bi++] = b1;
        x(u, t) = qpsk_map(b0, b1);
      }
    Eigen::MatrixXcd y = h * x;
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < plan.data_symbols; ++t) y(i, t) += noise_rng.cnormal(sigma);

    const Eigen::MatrixXcd w = detector_weights(csi[n], sigma, plan.detector);
    const Eigen::MatrixXcd z = w * y;
    bi = 0;
    for (int t = 0; t < plan.data_symbols; ++t)
      for (int u = 0; u < k; ++u) {
        int b0, b1;
        qpsk_slice(z(u, t), b0, b1);
        out.bit_errors += (b0 != tx_bits[bi++]);
        out.bit_errors += (b1 != tx_bits[bi++]);
        out.bits += 2;
      }
  }
  return out;
}

} // namespace detail

// Runs frames until the stopping rule fires.  Frame outcomes depend only on
// (seed, point_tag, frame index), so worker count never changes the result:
// frames are examined in batches and batch totals are summed in index order.
inline DetectionReport ber_monte_carlo_point(const FramePlan& plan, const StoppingRule& stop,
                                             std::uint64_t seed, std::uint64_t point_tag,
                                             int workers = 1) {
  if (stop.min_bit_errors <= 0 || stop.max_frames <= 0)
    throw std::domain_error("ber_monte_carlo: stopping rule must be positive");
  workers = std::max(1, workers);

  long errors = 0;
  long bits = 0;
  long frame = 0;
  const long batch = std::max<long>(workers, 8);
  while (frame < stop.max_frames && errors < stop.min_bit_errors) {
    const long hi = std::min<long>(stop.max_frames, frame + batch);
    std::vector<detail::FrameOutcome> outcomes(static_cast<std::size_t>(hi - frame));
    if (workers == 1) {
      for (long f = frame; f < hi; ++f)
        outcomes[static_cast<std::size_t>(f - frame)] =
            detail::run_frame(plan, seed, point_tag, static_cast<std::uint64_t>(f));
    } else {
      std::vector<std::thread> pool;
      std::atomic<long> next{frame};
      for (int wkr = 0; wkr < workers; ++wkr)
        pool.emplace_back([&]() {
          for (long f = next.fetch_add(1); f < hi; f = next.fetch_add(1))
            outcomes[static_cast<std::size_t>(f - frame)] =
                detail::run_frame(plan, seed, point_tag, static_cast<std::uint64_t>(f));
        });
      for (auto& t : pool) t.join();
    }
    for (const auto& oc : outcomes) {
      errors += oc.bit_errors;
      bits += oc.bits;
    }
    frame = hi;
  }

  DetectionReport rep;
  rep.detector = plan.detector;
  rep.csi_mode = plan.estimated_csi ? "estimated" : "perfect";
  rep.bit_errors = errors;
  rep.bits_simulated = bits;
  if (errors == 0) {
    rep.ber_is_upper_bound = true;
    rep.ber = wilson_interval(0, bits, 1.96).upper();
  } else {
    rep.ber = static_cast<double>(errors) / static_cast<double>(bits);
  }
  rep.ci_halfwidth = wilson_interval(errors, bits, 1.96).halfwidth;
  return rep;
}

} // namespace raqr::detect
