#include "csl/noise.hpp"

#include <cmath>
#include <string>

#include "csl/error.hpp"

namespace csl {

NoiseProcess::NoiseProcess(std::uint64_t seed, std::uint64_t stream, std::size_t n_channels)
    : seed_(seed), random_(seed, stream), colored_(n_channels) {
  if (n_channels == 0) {
    throw Error(ErrorCode::InvalidParameter, "noise process needs at least one channel");
  }
}

std::optional<double> NoiseProcess::colored_state(std::size_t channel) const {
  return colored_.at(channel);
}

double NoiseProcess::increment(std::size_t channel, double dt, const NoiseSpectrum& spectrum) {
  if (channel >= colored_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "noise channel " + std::to_string(channel));
  }
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "noise increment needs dt > 0");
  }
  if (const auto* cutoff = std::get_if<CutoffSpectrum>(&spectrum)) {
    if (!(cutoff->omega_max > 0.0)) {
      throw Error(ErrorCode::InvalidParameter, "omega_max must be positive");
    }
    return colored(channel, dt, cutoff->omega_max);
  }
  return white(dt);
}

double NoiseProcess::white(double dt) { return std::sqrt(dt) * random_.normal(); }

// Exact joint update of (eta, integral of eta over the step). With
// a = exp(-w h):
//   E[eta']          = a eta
//   E[Y]             = eta (1 - a) / w
//   Var[eta']        = w (1 - a^2) / 2
//   Var[Y]           = h - 2 (1 - a) / w + (1 - a^2) / (2 w)
//   Cov[eta', Y]     = (1 - a)^2 / 2
double NoiseProcess::colored(std::size_t channel, double dt, double omega) {
  auto& eta = colored_[channel];
  if (!eta) eta = std::sqrt(omega / 2.0) * random_.normal();

  const double x = omega * dt;
  const double one_minus_a = -std::expm1(-x);
  const double one_minus_a2 = -std::expm1(-2.0 * x);
  const double a = 1.0 - one_minus_a;

  const double var_eta = omega * one_minus_a2 / 2.0;
  // h - 2(1-a)/w + (1-a^2)/(2w), written to stay accurate when x is small.
  double var_y;
  if (x < 1e-3) {
    // Series: w^2 h^3 / 3 - w^3 h^4 / 4 + 7 w^4 h^5 / 60
    var_y = dt * x * x * (1.0 / 3.0 - x / 4.0 + 7.0 * x * x / 60.0);
  } else {
    var_y = (x - 2.0 * one_minus_a + one_minus_a2 / 2.0) / omega;
  }
  const double cov = one_minus_a * one_minus_a / 2.0;

  const double z1 = random_.normal();
  const double z2 = random_.normal();
  const double s_eta = std::sqrt(var_eta);
  const double beta = cov / s_eta;
  const double resid = std::max(var_y - beta * beta, 0.0);

  const double y = *eta * one_minus_a / omega + beta * z1 + std::sqrt(resid) * z2;
  *eta = a * *eta + s_eta * z1;
  return y;
}

double sample_noise_increment(NoiseProcess& noise, std::size_t channel, double dt,
                              const NoiseSpectrum& spectrum) {
  return noise.increment(channel, dt, spectrum);
}

}  // namespace csl
