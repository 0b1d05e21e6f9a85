#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "csl/rng.hpp"

namespace csl {

/// Flat (Brownian) noise spectrum.
struct WhiteSpectrum {};

/// Ornstein-Uhlenbeck noise with correlation time 1/omega_max: flat below
/// omega_max, falling as omega^-2 above it.
struct CutoffSpectrum {
  double omega_max;  // s^-1
};

using NoiseSpectrum = std::variant<WhiteSpectrum, CutoffSpectrum>;

/// Source of Wiener increments for one trajectory, one channel per noise cell.
///
/// Cutoff increments are the exact time integral of a stationary OU process
/// eta with d(eta) = -w eta dt + w dW, which has unit spectral density at low
/// frequency and therefore reduces to white increments of variance dt when
/// w * dt >> 1.
class NoiseProcess {
 public:
  NoiseProcess(std::uint64_t seed, std::uint64_t stream, std::size_t n_channels);

  std::size_t channels() const noexcept { return colored_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }

  double increment(std::size_t channel, double dt, const NoiseSpectrum& spectrum);

  /// Current OU value of a channel, if it has been started.
  std::optional<double> colored_state(std::size_t channel) const;

 private:
  double white(double dt);
  double colored(std::size_t channel, double dt, double omega);

  std::uint64_t seed_;
  RandomStream random_;
  std::vector<std::optional<double>> colored_;
};

/// Free-function form of NoiseProcess::increment.
double sample_noise_increment(NoiseProcess& noise, std::size_t channel, double dt,
                              const NoiseSpectrum& spectrum);

}  // namespace csl
