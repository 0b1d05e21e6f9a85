#include "csl/quantum_state.hpp"

#include <cmath>
#include <string>

#include "csl/error.hpp"

namespace csl {
namespace {

std::vector<std::string> index_labels(Eigen::Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

void check_same_dimension(const DiagonalObservable& obs, const StateVector& state) {
  if (obs.dimension() != state.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "observable has " + std::to_string(obs.dimension()) + " eigenvalues, state has " +
                    std::to_string(state.dimension()) + " amplitudes");
  }
}

Eigen::VectorXd born_weights(const StateVector& state) {
  Eigen::VectorXd p = state.amplitudes().cwiseAbs2();
  const double total = p.sum();
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized, "sum |c_i|^2 = " + std::to_string(total));
  }
  return p;
}

}  // namespace

StateVector::StateVector(std::vector<std::string> labels, Eigen::VectorXcd amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "state must have at least one basis state");
  }
  if (labels_.size() != static_cast<std::size_t>(amplitudes_.size())) {
    throw Error(ErrorCode::DimensionMismatch, "label count differs from amplitude count");
  }
}

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : labels_(index_labels(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "state must have at least one basis state");
  }
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Eigen::Map<const Eigen::VectorXcd>(amplitudes.begin(),
                                                     static_cast<Eigen::Index>(amplitudes.size()))) {}

StateVector StateVector::two_level(double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "p1 must lie in [0, 1]");
  }
  Eigen::VectorXcd c(2);
  c << std::sqrt(1.0 - p1), std::sqrt(p1);
  return StateVector(std::move(c));
}

DiagonalObservable::DiagonalObservable(Eigen::VectorXd eigenvalues, std::string unit)
    : eigenvalues_(std::move(eigenvalues)), unit_(std::move(unit)) {
  if (eigenvalues_.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "observable must have at least one eigenvalue");
  }
  if (!eigenvalues_.allFinite()) {
    throw Error(ErrorCode::InvalidParameter, "observable eigenvalues must be finite");
  }
}

DiagonalObservable::DiagonalObservable(std::initializer_list<double> eigenvalues)
    : DiagonalObservable(Eigen::Map<const Eigen::VectorXd>(
          eigenvalues.begin(), static_cast<Eigen::Index>(eigenvalues.size()))) {}

StateVector normalize(StateVector state) {
  const double n2 = state.norm_squared();
  if (!(n2 > 1e-300)) {
    throw Error(ErrorCode::ZeroNorm, "cannot normalize a zero vector");
  }
  Eigen::VectorXcd scaled = state.amplitudes() / std::sqrt(n2);
  return StateVector(state.labels(), std::move(scaled));
}

std::vector<double> probabilities(const StateVector& state) {
  const Eigen::VectorXd p = born_weights(state);
  return {p.begin(), p.end()};
}

double expectation(const DiagonalObservable& obs, const StateVector& state) {
  check_same_dimension(obs, state);
  return born_weights(state).dot(obs.eigenvalues());
}

double variance(const DiagonalObservable& obs, const StateVector& state) {
  check_same_dimension(obs, state);
  const Eigen::VectorXd p = born_weights(state);
  const double mean = p.dot(obs.eigenvalues());
  const double v = p.dot((obs.eigenvalues().array() - mean).square().matrix());
  return v > 0.0 ? v : 0.0;
}

}  // namespace csl
