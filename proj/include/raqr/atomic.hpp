// SPDX-License-Identifier: Apache-2.0
//
// Four-level ladder physics of a Rydberg atomic quantum receiver:
// steady-state density matrix, EIT/ATS probe-transmission spectra,
// superheterodyne transduction gain, photodetection noise and the
// resulting equivalent field sensitivity.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "raqr/constants.hpp"
#include "raqr/units.hpp"

namespace raqr::atomic {

using complexd = std::complex<double>;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

// Ladder levels are numbered 1..4: ground, intermediate, and the two
// Rydberg states coupled by the RF field.
struct AtomicSystem {
  double dipole_12 = 0.0; // C m, probe transition
  double dipole_23 = 0.0; // C m, coupling transition
  double dipole_34 = 0.0; // C m, RF transition
  double decay_2 = 0.0;   // rad/s, population decay out of level 2
  double decay_3 = 0.0;   // rad/s
  double decay_4 = 0.0;   // rad/s
  double dephasing_total = 0.0;   // rad/s, extra pure dephasing on level 2
  double density = 0.0;           // atoms per m^3
  double population_fraction = 0.0; // fraction of atoms participating
  double cell_length = 0.0;         // m
  double coherence_time = 0.0;      // s, metadata; not used by any operation

  void validate() const {
    if (dipole_12 <= 0 || dipole_23 <= 0 || dipole_34 <= 0)
      throw std::domain_error("AtomicSystem: dipole moments must be positive");
    if (decay_2 <= 0 || decay_3 <= 0 || decay_4 <= 0)
      throw std::domain_error("AtomicSystem: decay rates must be positive");
    if (dephasing_total < 0)
      throw std::domain_error("AtomicSystem: dephasing must be non-negative");
    if (density <= 0) throw std::domain_error("AtomicSystem: density must be positive");
    if (population_fraction <= 0 || population_fraction > 1)
      throw std::domain_error("AtomicSystem: population_fraction must be in (0,1]");
    if (cell_length <= 0) throw std::domain_error("AtomicSystem: cell_length must be positive");
  }

  // Coherence decay rates: gamma_ij = (Gamma_i + Gamma_j)/2 with the lumped
  // dephasing acting on level 2 (so it enters every coherence involving 2).
  double gamma21() const { return 0.5 * decay_2 + dephasing_total; }
  double gamma31() const { return 0.5 * decay_3; }
  double gamma41() const { return 0.5 * decay_4; }
};

struct OpticalDrive {
  double probe_wavelength = 0.0;    // m
  double coupling_wavelength = 0.0; // m
  double probe_power = 0.0;         // W
  double coupling_power = 0.0;      // W
  double local_optical_power = 0.0; // W, BCOD local beam
  double beam_radius = 0.0;         // m
  double probe_detuning = 0.0;      // rad/s
  double coupling_detuning = 0.0;   // rad/s

  void validate() const {
    if (probe_wavelength <= 0 || coupling_wavelength <= 0)
      throw std::domain_error("OpticalDrive: wavelengths must be positive");
    if (probe_power < 0 || coupling_power < 0 || local_optical_power < 0)
      throw std::domain_error("OpticalDrive: powers must be non-negative");
    if (beam_radius <= 0) throw std::domain_error("OpticalDrive: beam radius must be positive");
  }
};

struct RfDrive {
  double carrier_frequency = 0.0; // Hz
  double lo_amplitude = 0.0;      // V/m, strong local RF field
  double signal_amplitude = 0.0;  // V/m, weak field to be detected
  double lo_signal_offset = 0.0;  // Hz, beat frequency between LO and signal
  double rf_detuning = 0.0;       // rad/s, LO detuning from the 3-4 transition
  double bandwidth = 0.0;         // Hz, RF signal bandwidth
  double beat_limit = 10e6;       // Hz, receiver beat-handling limit (config-declared)

  void validate() const {
    if (carrier_frequency <= 0) throw std::domain_error("RfDrive: carrier must be positive");
    if (lo_amplitude < 0 || signal_amplitude < 0)
      throw std::domain_error("RfDrive: amplitudes must be non-negative");
    if (bandwidth <= 0) throw std::domain_error("RfDrive: bandwidth must be positive");
    if (lo_signal_offset >= beat_limit)
      throw std::domain_error("RfDrive: LO-signal offset exceeds the beat-handling limit");
  }
};

enum class PhotoScheme { DIOD, BCOD };

inline std::string to_string(PhotoScheme s) { return s == PhotoScheme::DIOD ? "diod" : "bcod"; }

struct PhotoReceiver {
  double quantum_efficiency = 0.0;   // (0,1]
  double lna_gain_db = 0.0;          // dB
  double lna_noise_temperature = 0.0; // K
  double load_resistance = 0.0;      // Ohm
  PhotoScheme scheme = PhotoScheme::BCOD;

  void validate() const {
    if (quantum_efficiency <= 0 || quantum_efficiency > 1)
      throw std::domain_error("PhotoReceiver: quantum efficiency must be in (0,1]");
    if (load_resistance <= 0)
      throw std::domain_error("PhotoReceiver: load resistance must be positive");
    if (lna_noise_temperature < 0)
      throw std::domain_error("PhotoReceiver: noise temperature must be non-negative");
  }
};

struct EitSpectrum {
  std::vector<double> detuning_grid;        // rad/s, probe detuning
  std::vector<double> transmission;         // (0,1]
  std::vector<complexd> susceptibility;
  bool gain_artifact = false; // Im chi < 0 somewhere: model-validity warning
};

// ---------------------------------------------------------------------------
// Beam and field helpers
// ---------------------------------------------------------------------------

// Peak field of a Gaussian beam: I = 2P/(pi r^2), E = sqrt(2 I /(c eps0)).
inline double beam_peak_field(double power, double radius) {
  if (power < 0 || radius <= 0) throw std::domain_error("beam_peak_field: invalid input");
  const double intensity = 2.0 * power / (constants::pi * radius * radius);
  return std::sqrt(2.0 * intensity / (constants::speed_of_light * constants::vacuum_permittivity));
}

// Angular Rabi frequency of a transition driven by a Gaussian beam.
inline double rabi_from_beam(double power, double radius, double dipole, double wavelength) {
  if (power < 0) throw std::domain_error("rabi_from_beam: negative power");
  if (radius <= 0 || dipole <= 0 || wavelength <= 0)
    throw std::domain_error("rabi_from_beam: inputs must be positive");
  return dipole * beam_peak_field(power, radius) / constants::hbar;
}

inline double rabi_from_field(double field_amplitude, double dipole) {
  if (field_amplitude < 0 || dipole <= 0)
    throw std::domain_error("rabi_from_field: invalid input");
  return dipole * field_amplitude / constants::hbar;
}

// ---------------------------------------------------------------------------
// Steady state of the driven ladder (Lindblad master equation)
// ---------------------------------------------------------------------------

class SteadyStateError : public std::runtime_error {
public:
  explicit SteadyStateError(const std::string& what) : std::runtime_error(what) {}
};

struct SteadyState {
  Eigen::Matrix4cd rho;
  double residual = 0.0; // relative Lindblad residual of the returned state

  complexd rho21() const { return rho(1, 0); }
};

namespace detail {

using Matrix16 = Eigen::Matrix<complexd, 16, 16>;
using Vector16 = Eigen::Matrix<complexd, 16, 1>;

// kron(A, B) for 4x4 blocks; vec is column-major so vec(A X B) = kron(B^T, A) vec(X)
inline Matrix16 kron4(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
  Matrix16 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

inline void add_dissipator(Matrix16& lv, const Eigen::Matrix4cd& c) {
  const Eigen::Matrix4cd cdc = c.adjoint() * c;
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  lv += kron4(c.conjugate(), c);
  lv -= 0.5 * kron4(id, cdc);
  lv -= 0.5 * kron4(cdc.transpose(), id);
}

inline Matrix16 liouvillian(const AtomicSystem& sys, double rabi_p, double rabi_c,
                            double rabi_rf, double delta_p, double delta_c, double delta_rf) {
  // Rotating-frame Hamiltonian over /hbar.  Sign convention chosen so that a
  // weak probe yields rho21 = +i(Omega_p/2)/D with D = gamma21 - i*delta_p + ...
  const double d1 = delta_p;
  const double d2 = delta_p + delta_c;
  const double d3 = delta_p + delta_c + delta_rf;
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(1, 1) = -d1;
  h(2, 2) = -d2;
  h(3, 3) = -d3;
  h(0, 1) = h(1, 0) = -0.5 * rabi_p;
  h(1, 2) = h(2, 1) = -0.5 * rabi_c;
  h(2, 3) = h(3, 2) = -0.5 * rabi_rf;

  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  Matrix16 lv = complexd(0, -1) * (kron4(id, h) - kron4(h.transpose(), id));

  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 1) = std::sqrt(sys.decay_2); // |1><2|
  add_dissipator(lv, c);
  c.setZero();
  c(1, 2) = std::sqrt(sys.decay_3); // |2><3|
  add_dissipator(lv, c);
  c.setZero();
  c(2, 3) = std::sqrt(sys.decay_4); // |3><4|
  add_dissipator(lv, c);
  if (sys.dephasing_total > 0) {
    c.setZero();
    c(1, 1) = std::sqrt(2.0 * sys.dephasing_total); // pure dephasing of level 2
    add_dissipator(lv, c);
  }
  return lv;
}

} // namespace detail

// Solves L(rho) = 0 with tr(rho) = 1 as a 16x16 linear system (the trace
// constraint replaces the redundant d/dt rho_11 row).
inline SteadyState steady_state_coherence(const AtomicSystem& sys, double rabi_p, double rabi_c,
                                          double rabi_rf, double delta_p, double delta_c,
                                          double delta_rf) {
  sys.validate();
  if (rabi_p < 0 || rabi_c < 0 || rabi_rf < 0)
    throw std::domain_error("steady_state_coherence: Rabi frequencies must be non-negative");

  const detail::Matrix16 lv =
      detail::liouvillian(sys, rabi_p, rabi_c, rabi_rf, delta_p, delta_c, delta_rf);

  detail::Matrix16 a = lv;
  detail::Vector16 b = detail::Vector16::Zero();
  a.row(0).setZero();
  for (int i = 0; i < 4; ++i) a(0, i + 4 * i) = 1.0; // trace row
  b(0) = 1.0;

  Eigen::FullPivLU<detail::Matrix16> lu(a);
  if (!lu.isInvertible())
    throw SteadyStateError("steady_state_coherence: singular steady-state system "
                           "(no unique stationary density matrix for these drives/rates)");
  const detail::Vector16 x = lu.solve(b);

  SteadyState out;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) out.rho(i, j) = x(i + 4 * j);

  const double lnorm = lv.norm();
  out.residual = (lv * x).norm() / (lnorm > 0 ? lnorm * x.norm() : 1.0);
  if (!std::isfinite(out.residual) || out.residual > 1e-9) {
    std::ostringstream msg;
    msg << "steady_state_coherence: Lindblad residual " << out.residual
        << " exceeds 1e-9 (ill-conditioned steady state)";
    throw SteadyStateError(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// EIT / ATS spectrum
// ---------------------------------------------------------------------------

struct LadderOperatingPoint {
  double rabi_p = 0.0;
  double rabi_c = 0.0;
  double rabi_rf = 0.0;
  double delta_p = 0.0;
  double delta_c = 0.0;
  double delta_rf = 0.0;
};

inline LadderOperatingPoint operating_point(const AtomicSystem& sys, const OpticalDrive& drive,
                                            const RfDrive& rf, double rf_field_amplitude) {
  LadderOperatingPoint op;
  op.rabi_p = rabi_from_beam(drive.probe_power, drive.beam_radius, sys.dipole_12,
                             drive.probe_wavelength);
  op.rabi_c = rabi_from_beam(drive.coupling_power, drive.beam_radius, sys.dipole_23,
                             drive.coupling_wavelength);
  op.rabi_rf = rabi_from_field(rf_field_amplitude, sys.dipole_34);
  op.delta_p = drive.probe_detuning;
  op.delta_c = drive.coupling_detuning;
  op.delta_rf = rf.rf_detuning;
  return op;
}

// Complex susceptibility of the vapor at one probe detuning.
inline complexd susceptibility_at(const AtomicSystem& sys, const OpticalDrive& drive,
                                  const LadderOperatingPoint& op) {
  const auto ss = steady_state_coherence(sys, op.rabi_p, op.rabi_c, op.rabi_rf, op.delta_p,
                                         op.delta_c, op.delta_rf);
  const double e_probe = beam_peak_field(drive.probe_power, drive.beam_radius);
  return 2.0 * sys.density * sys.population_fraction * sys.dipole_12 * ss.rho21() /
         (constants::vacuum_permittivity * e_probe);
}

inline double transmission_from_chi(const AtomicSystem& sys, const OpticalDrive& drive,
                                    complexd chi) {
  const double k_p = constants::two_pi / drive.probe_wavelength;
  const double t = std::exp(-k_p * sys.cell_length * chi.imag());
  return std::min(t, 1.0);
}

// Probe transmission spectrum over a grid of probe detunings.  The RF drive
// enters through its total envelope amplitude (LO + signal).
inline EitSpectrum eit_spectrum(const AtomicSystem& sys, const OpticalDrive& drive,
                                const RfDrive& rf, const std::vector<double>& grid) {
  sys.validate();
  drive.validate();
  rf.validate();
  if (grid.empty()) throw std::domain_error("eit_spectrum: empty detuning grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw std::domain_error("eit_spectrum: detuning grid must be strictly increasing");

  EitSpectrum spec;
  spec.detuning_grid = grid;
  spec.transmission.resize(grid.size());
  spec.susceptibility.resize(grid.size());

  LadderOperatingPoint op =
      operating_point(sys, drive, rf, rf.lo_amplitude + rf.signal_amplitude);
  double chi_scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    op.delta_p = grid[i];
    const complexd chi = susceptibility_at(sys, drive, op);
    spec.susceptibility[i] = chi;
    spec.transmission[i] = transmission_from_chi(sys, drive, chi);
    chi_scale = std::max(chi_scale, std::abs(chi));
  }
  for (const complexd& chi : spec.susceptibility)
    if (chi.imag() < -1e-12 * chi_scale) spec.gain_artifact = true;
  return spec;
}

// Local maxima of the transmission curve, positions refined by quadratic
// interpolation through the three samples around each maximum.
struct SpectrumPeak {
  double detuning = 0.0;
  double transmission = 0.0;
};

inline std::vector<SpectrumPeak> find_transmission_peaks(const EitSpectrum& spec) {
  std::vector<SpectrumPeak> peaks;
  const auto& t = spec.transmission;
  const auto& x = spec.detuning_grid;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] > t[i - 1] && t[i] >= t[i + 1]) {
      const double denom = t[i - 1] - 2.0 * t[i] + t[i + 1];
      double pos = x[i];
      double val = t[i];
      if (denom < 0) {
        const double frac = 0.5 * (t[i - 1] - t[i + 1]) / denom;
        pos = x[i] + frac * (x[i + 1] - x[i]);
        val = t[i] - 0.25 * (t[i - 1] - t[i + 1]) * frac;
      }
      peaks.push_back({pos, val});
    }
  }
  return peaks;
}

// Separation (rad/s on the probe axis) of the two dominant ATS peaks.
inline double ats_peak_separation(const EitSpectrum& spec) {
  auto peaks = find_transmission_peaks(spec);
  if (peaks.size() < 2)
    throw std::runtime_error("ats_peak_separation: fewer than two transmission peaks");
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectrumPeak& a, const SpectrumPeak& b) { return a.transmission > b.transmission; });
  return std::abs(peaks[0].detuning - peaks[1].detuning);
}

// FWHM of the transparency feature, measured against the absorption floor of
// the sampled window.
inline double eit_linewidth(const EitSpectrum& spec) {
  const auto peaks = find_transmission_peaks(spec);
  if (peaks.empty()) throw std::runtime_error("eit_linewidth: no transparency peak found");
  const SpectrumPeak peak =
      *std::max_element(peaks.begin(), peaks.end(), [](const SpectrumPeak& a, const SpectrumPeak& b) {
        return a.transmission < b.transmission;
      });
  const double floor = *std::min_element(spec.transmission.begin(), spec.transmission.end());
  const double half = 0.5 * (peak.transmission + floor);

  const auto& t = spec.transmission;
  const auto& x = spec.detuning_grid;
  // peak sample index
  std::size_t ip = 0;
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] > t[ip]) ip = i;

  double left = x.front(), right = x.back();
  for (std::size_t i = ip; i > 0; --i) {
    if (t[i - 1] <= half && t[i] > half) {
      left = x[i - 1] + (half - t[i - 1]) / (t[i] - t[i - 1]) * (x[i] - x[i - 1]);
      break;
    }
  }
  for (std::size_t i = ip; i + 1 < t.size(); ++i) {
    if (t[i + 1] <= half && t[i] > half) {
      right = x[i] + (t[i] - half) / (t[i] - t[i + 1]) * (x[i + 1] - x[i]);
      break;
    }
  }
  return right - left;
}

// ---------------------------------------------------------------------------
// Superheterodyne transduction gain
// ---------------------------------------------------------------------------

class TransductionError : public std::runtime_error {
public:
  explicit TransductionError(const std::string& what) : std::runtime_error(what) {}
};

struct TransductionGain {
  double kappa = 0.0;            // |dP_out/dE_rf| at the operating point, W/(V/m)
  double slope = 0.0;            // signed derivative
  double step = 0.0;             // converged finite-difference step, V/m
  double transmission = 0.0;     // probe transmission at the operating point
  double probe_power_out = 0.0;  // probe power reaching the detector, W
};

namespace detail {

inline double transmission_at_rf_field(const AtomicSystem& sys, const OpticalDrive& drive,
                                       const RfDrive& rf, double rf_field) {
  LadderOperatingPoint op = operating_point(sys, drive, rf, rf_field);
  return transmission_from_chi(sys, drive, susceptibility_at(sys, drive, op));
}

} // namespace detail

// dP_probe_out/dE_RF at E_RF = lo_amplitude by central finite difference with
// automatic step halving until two consecutive estimates agree within 5%.
inline TransductionGain superhet_transduction_gain(const AtomicSystem& sys,
                                                   const OpticalDrive& drive, const RfDrive& rf) {
  sys.validate();
  drive.validate();
  rf.validate();
  if (rf.lo_amplitude <= 0)
    throw std::domain_error("superhet_transduction_gain: LO amplitude must be positive");

  const double e0 = rf.lo_amplitude;
  const double t0 = detail::transmission_at_rf_field(sys, drive, rf, e0);

  double h = 0.25 * e0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double slope = 0.0;
  bool converged = false;
  for (int iter = 0; iter < 40; ++iter) {
    const double tp = detail::transmission_at_rf_field(sys, drive, rf, e0 + h);
    const double tm = detail::transmission_at_rf_field(sys, drive, rf, e0 - h);
    slope = drive.probe_power * (tp - tm) / (2.0 * h);
    if (std::isfinite(prev)) {
      const double scale = std::max(std::abs(slope), std::abs(prev));
      if (scale == 0.0 || std::abs(slope - prev) <= 0.05 * scale) {
        converged = true;
        break;
      }
    }
    prev = slope;
    h *= 0.5;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "superhet_transduction_gain: finite difference did not converge (last estimates "
        << prev << " and " << slope << " W/(V/m) at step " << h << " V/m)";
    throw TransductionError(msg.str());
  }

  TransductionGain g;
  g.slope = slope;
  g.kappa = std::abs(slope);
  g.step = h;
  g.transmission = t0;
  g.probe_power_out = drive.probe_power * t0;
  return g;
}

// Probe detuning maximising |dP/dE_RF| over a scan window.  This is the
// natural place to lock the probe laser for superheterodyne readout.
inline double max_slope_probe_detuning(const AtomicSystem& sys, const OpticalDrive& drive,
                                       const RfDrive& rf, double half_width, int points) {
  if (points < 3) throw std::domain_error("max_slope_probe_detuning: need at least 3 points");
  OpticalDrive d = drive;
  const double h = 1e-3 * rf.lo_amplitude;
  double best_slope = -1.0;
  double best_detuning = 0.0;
  for (int i = 0; i < points; ++i) {
    d.probe_detuning = -half_width + 2.0 * half_width * i / (points - 1);
    const double tp = detail::transmission_at_rf_field(sys, d, rf, rf.lo_amplitude + h);
    const double tm = detail::transmission_at_rf_field(sys, d, rf, rf.lo_amplitude - h);
    const double slope = std::abs(drive.probe_power * (tp - tm) / (2.0 * h));
    if (slope > best_slope) {
      best_slope = slope;
      best_detuning = d.probe_detuning;
    }
  }
  return best_detuning;
}

// ---------------------------------------------------------------------------
// Photodetection noise and field sensitivity
// ---------------------------------------------------------------------------

struct PhotoNoise {
  double responsivity = 0.0;       // A/W
  double photocurrent = 0.0;       // A, DC (includes the local beam for BCOD)
  double shot_psd = 0.0;           // A^2/Hz
  double thermal_psd = 0.0;        // A^2/Hz (BCOD: divided by the signal gain)
  double total_psd = 0.0;          // A^2/Hz
  double signal_power_gain = 1.0;  // BCOD beat gain (P_det + P_l)/P_det
};

// Current-noise PSD of the photoreceiver.  In BCOD the strong local optical
// beam boosts the beat signal by (P_det+P_l)/P_det in power, so the thermal
// term is suppressed by that factor and the detector approaches the photon
// shot limit of the probe as P_l grows.
inline PhotoNoise photodetection_noise(const PhotoReceiver& rx, double probe_power_at_detector,
                                       double probe_wavelength, double local_optical_power = 0.0) {
  rx.validate();
  if (probe_power_at_detector < 0 || local_optical_power < 0)
    throw std::domain_error("photodetection_noise: powers must be non-negative");
  if (probe_wavelength <= 0)
    throw std::domain_error("photodetection_noise: wavelength must be positive");

  const double nu = wavelength_to_frequency(probe_wavelength);
  PhotoNoise n;
  n.responsivity = rx.quantum_efficiency * constants::elementary_charge / (constants::planck * nu);

  const double p_local = rx.scheme == PhotoScheme::BCOD ? local_optical_power : 0.0;
  const double p_total = probe_power_at_detector + p_local;
  n.photocurrent = n.responsivity * p_total;
  n.shot_psd = 2.0 * constants::elementary_charge * n.photocurrent;

  const double thermal_abs =
      4.0 * constants::boltzmann * rx.lna_noise_temperature / rx.load_resistance;
  if (rx.scheme == PhotoScheme::BCOD && p_total > 0) {
    n.signal_power_gain = probe_power_at_detector > 0
                              ? p_total / probe_power_at_detector
                              : std::numeric_limits<double>::infinity();
    n.thermal_psd = thermal_abs * (probe_power_at_detector / p_total);
  } else {
    n.signal_power_gain = 1.0;
    n.thermal_psd = thermal_abs;
  }
  n.total_psd = n.shot_psd + n.thermal_psd;
  return n;
}

struct SensitivityReport {
  double sensitivity = 0.0;       // (V/m)/sqrt(Hz)
  double sensitivity_nv_cm = 0.0; // nV cm^-1 Hz^-1/2
  TransductionGain gain;
  PhotoNoise noise;
};

// Minimum detectable RF field in a 1 Hz bandwidth:
//   E_min = sqrt(PSD_total / G) / (responsivity * kappa)
// where G is the BCOD signal power gain (1 for DIOD).
inline SensitivityReport equivalent_field_sensitivity(const AtomicSystem& sys,
                                                      const OpticalDrive& drive, const RfDrive& rf,
                                                      const PhotoReceiver& rx) {
  SensitivityReport rep;
  rep.gain = superhet_transduction_gain(sys, drive, rf);
  if (!(rep.gain.kappa > 0))
    throw TransductionError(
        "equivalent_field_sensitivity: operating point gives no transduction (kappa <= 0)");
  rep.noise = photodetection_noise(rx, rep.gain.probe_power_out, drive.probe_wavelength,
                                   drive.local_optical_power);
  rep.sensitivity = std::sqrt(rep.noise.total_psd / rep.noise.signal_power_gain) /
                    (rep.noise.responsivity * rep.gain.kappa);
  rep.sensitivity_nv_cm = field_sensitivity_to_nv_cm(rep.sensitivity);
  return rep;
}

} // namespace raqr::atomic
