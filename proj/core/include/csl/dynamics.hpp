#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "csl/noise.hpp"
#include "csl/outcome.hpp"
#include "csl/quantum_state.hpp"

namespace csl {

using Hamiltonian = Eigen::MatrixXcd;

/// Maximum |H - H^dagger| entry tolerated before a Hamiltonian is rejected.
inline constexpr double kHermiticityTolerance = 1e-9;

struct CslParams {
  double lambda = 0.0;   // collapse rate, s^-1
  double r_c_cm = 1e-5;  // correlation length, reporting only
  double dt = 1e-3;      // integration step, s (model units for toy systems)
  NoiseSpectrum spectrum = WhiteSpectrum{};

  /// Throws InvalidParameter unless lambda >= 0, dt > 0, omega_max > 0.
  void validate() const;
};

/// Zero Hamiltonian of the given dimension.
Hamiltonian zero_hamiltonian(std::size_t dimension);

/// Throws NonHermitianHamiltonian when max |H - H^dagger| exceeds tolerance.
void check_hermitian(const Hamiltonian& h);

/// One Euler-Maruyama step of the norm-preserving collapse equation
///
///   dpsi = [ -i H dt + sum_k sqrt(lambda) (M_k - <M_k>) dW_k
///            - (lambda/2) sum_k (M_k - <M_k>)^2 dt ] psi
///
/// followed by renormalization. Channel k of `noise` drives observable k.
StateVector sde_step(const StateVector& state, const Hamiltonian& h,
                     std::span<const DiagonalObservable> observables, const CslParams& params,
                     NoiseProcess& noise);

StateVector sde_step(const StateVector& state, const Hamiltonian& h, const DiagonalObservable& m,
                     const CslParams& params, NoiseProcess& noise);

struct TrajectoryOptions {
  double t_final = 1.0;
  std::size_t sample_every = 1;  // steps between recorded samples
  double collapse_epsilon = kDefaultCollapseEpsilon;
  /// Stop as soon as the state is classified; otherwise integrate to t_final.
  bool stop_on_collapse = true;

  void validate() const;
};

struct TrajectorySample {
  double time = 0.0;
  std::vector<double> probabilities;
  double expectation_m = 0.0;  // of the first observable
  double variance_m = 0.0;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  StateVector final_state;
  std::size_t steps_taken = 0;
  Outcome outcome;

  /// Time of the last integrated step.
  double final_time() const { return samples.empty() ? 0.0 : samples.back().time; }
};

/// Number of steps of size dt covering t_final (rounded, never zero).
std::size_t step_count(double t_final, double dt);

/// Integrates sde_step from t = 0. Samples are taken at step 0, every
/// `sample_every` steps, and at the final step. With stop_on_collapse the run
/// ends at the first step where some p_i >= 1 - collapse_epsilon.
Trajectory evolve_trajectory(const StateVector& initial, const Hamiltonian& h,
                             std::span<const DiagonalObservable> observables,
                             const CslParams& params, NoiseProcess& noise,
                             const TrajectoryOptions& options);

Trajectory evolve_trajectory(const StateVector& initial, const Hamiltonian& h,
                             const DiagonalObservable& m, const CslParams& params,
                             NoiseProcess& noise, const TrajectoryOptions& options);

/// 1 / (lambda * deltaM^2): the time scale on which a superposition whose
/// branches differ by deltaM in the coupled observable is resolved.
double collapse_time_estimate(double lambda, double delta_m_squared);

}  // namespace csl
