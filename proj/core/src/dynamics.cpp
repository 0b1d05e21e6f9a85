#include "csl/dynamics.hpp"

#include <cmath>
#include <string>

#include "csl/error.hpp"
#include "stepper.hpp"

namespace csl {

void CslParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidParameter, "lambda must be finite and >= 0");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidParameter, "dt must be finite and > 0");
  }
  if (const auto* cutoff = std::get_if<CutoffSpectrum>(&spectrum); cutoff && !(cutoff->omega_max > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "omega_max must be > 0");
  }
}

void TrajectoryOptions::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::InvalidParameter, "t_final must be finite and > 0");
  }
  if (sample_every == 0) {
    throw Error(ErrorCode::InvalidParameter, "sample_every must be >= 1");
  }
  if (!(collapse_epsilon > 0.0 && collapse_epsilon < 0.5)) {
    throw Error(ErrorCode::InvalidParameter, "collapse_epsilon must lie in (0, 0.5)");
  }
}

Hamiltonian zero_hamiltonian(std::size_t dimension) {
  const auto n = static_cast<Eigen::Index>(dimension);
  return Hamiltonian::Zero(n, n);
}

void check_hermitian(const Hamiltonian& h) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian must be square");
  }
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTolerance) {
    throw Error(ErrorCode::NonHermitianHamiltonian,
                "max |H - H^dagger| = " + std::to_string(asym));
  }
}

namespace detail {

void validate_system(const StateVector& state, const Hamiltonian& h,
                     std::span<const DiagonalObservable> observables, const CslParams& params,
                     const NoiseProcess& noise) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(state.dimension());
  if (h.rows() != n || h.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian is " + std::to_string(h.rows()) + "x" +
                                                  std::to_string(h.cols()) + ", state has " +
                                                  std::to_string(n) + " amplitudes");
  }
  check_hermitian(h);
  if (observables.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "at least one coupled observable is required");
  }
  for (const auto& m : observables) {
    if (m.dimension() != state.dimension()) {
      throw Error(ErrorCode::DimensionMismatch, "observable dimension differs from state");
    }
  }
  if (noise.channels() < observables.size()) {
    throw Error(ErrorCode::DimensionMismatch, "noise process has fewer channels than observables");
  }
  if (std::abs(state.norm_squared() - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized, "sde_step requires a normalized state");
  }
}

Stepper::Stepper(const Hamiltonian& h, std::span<const DiagonalObservable> observables,
                 const CslParams& params)
    : h_(h),
      has_h_(!h.isZero(0.0)),
      observables_(observables),
      params_(params),
      sqrt_lambda_(std::sqrt(params.lambda)),
      scratch_(h.rows()),
      shifted_(h.rows()) {}

void Stepper::step(Eigen::VectorXcd& psi, NoiseProcess& noise) {
  const double dt = params_.dt;
  scratch_ = psi;
  bool touched = has_h_;
  if (has_h_) scratch_.noalias() += Complex(0.0, -dt) * (h_ * psi);

  for (std::size_t k = 0; k < observables_.size(); ++k) {
    const Eigen::VectorXd& m = observables_[k].eigenvalues();
    // Noise is drawn even when lambda = 0 so streams line up across runs.
    const double dw = noise.increment(k, dt, params_.spectrum);
    if (params_.lambda == 0.0) continue;
    touched = true;
    const double mean = psi.cwiseAbs2().dot(m);
    shifted_ = m.array() - mean;
    const Eigen::ArrayXd gain =
        sqrt_lambda_ * dw * shifted_.array() - 0.5 * params_.lambda * dt * shifted_.array().square();
    scratch_.array() += gain.cast<Complex>() * psi.array();
  }

  // Frozen dynamics leaves psi bit-identical.
  if (!touched) return;

  const double n2 = scratch_.squaredNorm();
  if (!(n2 > 1e-300) || !std::isfinite(n2)) {
    throw Error(ErrorCode::ZeroNorm, "state norm collapsed during step; reduce dt");
  }
  psi = scratch_ / std::sqrt(n2);
}

}  // namespace detail

StateVector sde_step(const StateVector& state, const Hamiltonian& h,
                     std::span<const DiagonalObservable> observables, const CslParams& params,
                     NoiseProcess& noise) {
  detail::validate_system(state, h, observables, params, noise);
  detail::Stepper stepper(h, observables, params);
  Eigen::VectorXcd psi = state.amplitudes();
  stepper.step(psi, noise);
  return StateVector(state.labels(), std::move(psi));
}

StateVector sde_step(const StateVector& state, const Hamiltonian& h, const DiagonalObservable& m,
                     const CslParams& params, NoiseProcess& noise) {
  return sde_step(state, h, std::span<const DiagonalObservable>(&m, 1), params, noise);
}

std::size_t step_count(double t_final, double dt) {
  const double ratio = t_final / dt;
  const auto n = static_cast<std::size_t>(std::llround(ratio));
  // Accept t_final that is a multiple of dt up to rounding; otherwise round up.
  if (std::abs(ratio - static_cast<double>(n)) <= 1e-9 * std::max(1.0, ratio)) {
    return std::max<std::size_t>(n, 1);
  }
  return std::max<std::size_t>(static_cast<std::size_t>(std::ceil(ratio)), 1);
}

namespace {

TrajectorySample make_sample(double t, const Eigen::VectorXcd& psi, const DiagonalObservable& m) {
  TrajectorySample s;
  s.time = t;
  const Eigen::VectorXd p = psi.cwiseAbs2();
  s.probabilities.assign(p.begin(), p.end());
  s.expectation_m = p.dot(m.eigenvalues());
  const double v = p.dot((m.eigenvalues().array() - s.expectation_m).square().matrix());
  s.variance_m = v > 0.0 ? v : 0.0;
  return s;
}

Outcome classify_amplitudes(const Eigen::VectorXcd& psi, double epsilon) {
  Eigen::Index best = 0;
  const double pmax = psi.cwiseAbs2().maxCoeff(&best);
  if (pmax >= 1.0 - epsilon) return static_cast<std::size_t>(best);
  return std::nullopt;
}

}  // namespace

Trajectory evolve_trajectory(const StateVector& initial, const Hamiltonian& h,
                             std::span<const DiagonalObservable> observables,
                             const CslParams& params, NoiseProcess& noise,
                             const TrajectoryOptions& options) {
  detail::validate_system(initial, h, observables, params, noise);
  options.validate();

  const std::size_t n_steps = step_count(options.t_final, params.dt);
  const DiagonalObservable& m0 = observables.front();
  detail::Stepper stepper(h, observables, params);

  Eigen::VectorXcd psi = initial.amplitudes();
  std::vector<TrajectorySample> samples;
  samples.reserve(n_steps / options.sample_every + 2);
  samples.push_back(make_sample(0.0, psi, m0));

  Outcome outcome;
  std::size_t k = 0;
  if (options.stop_on_collapse) outcome = classify_amplitudes(psi, options.collapse_epsilon);

  while (!(options.stop_on_collapse && outcome) && k < n_steps) {
    stepper.step(psi, noise);
    ++k;
    if (options.stop_on_collapse) outcome = classify_amplitudes(psi, options.collapse_epsilon);
    const bool last = k == n_steps || (options.stop_on_collapse && outcome);
    if (k % options.sample_every == 0 || last) {
      samples.push_back(make_sample(static_cast<double>(k) * params.dt, psi, m0));
    }
  }
  if (!options.stop_on_collapse) outcome = classify_amplitudes(psi, options.collapse_epsilon);

  return Trajectory{std::move(samples), StateVector(initial.labels(), std::move(psi)), k, outcome};
}

Trajectory evolve_trajectory(const StateVector& initial, const Hamiltonian& h,
                             const DiagonalObservable& m, const CslParams& params,
                             NoiseProcess& noise, const TrajectoryOptions& options) {
  return evolve_trajectory(initial, h, std::span<const DiagonalObservable>(&m, 1), params, noise,
                           options);
}

double collapse_time_estimate(double lambda, double delta_m_squared) {
  if (!(lambda > 0.0) || !(delta_m_squared > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "collapse_time_estimate needs lambda > 0 and dM^2 > 0");
  }
  return 1.0 / (lambda * delta_m_squared);
}

}  // namespace csl
