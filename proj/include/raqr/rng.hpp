// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "raqr/constants.hpp"

namespace raqr {

// Counter-based pseudo-random stream.  A stream is fully determined by
// (seed, stream, counter), so Monte-Carlo frames can be generated in any
// order and on any number of workers without changing the results.
//
// The core mixer is SplitMix64, which is plenty for the Gaussian/uniform
// draws used by the physics simulations here (not cryptographic).
class FrameRng {
public:
  FrameRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t frame)
      : state_(mix(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream ^ 0xbf58476d1ce4e5b9ull)) ^
               mix(frame ^ 0x94d049bb133111ebull)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; draws are consumed in pairs
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    // avoid log(0)
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = constants::two_pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // circularly-symmetric complex normal, E|z|^2 = variance
  std::complex<double> cnormal(double variance = 1.0) {
    const double s = std::sqrt(variance / 2.0);
    return {s * normal(), s * normal()};
  }

  bool bernoulli(double p) { return uniform() < p; }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream tags keep independent parts of an experiment statistically
// decoupled even when they share the master seed.
namespace rng_stream {
inline constexpr std::uint64_t channel = 0x10;
inline constexpr std::uint64_t noise = 0x20;
inline constexpr std::uint64_t data_bits = 0x30;
inline constexpr std::uint64_t geometry = 0x40;
} // namespace rng_stream

} // namespace raqr
