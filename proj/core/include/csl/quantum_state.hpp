#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace csl {

using Complex = std::complex<double>;

/// Tolerance on |sum p_i - 1| above which a state counts as unnormalized.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Complex amplitudes over a finite, labeled basis. Labels are opaque; all
/// physics lives in the amplitudes and in the observables acting on them.
class StateVector {
 public:
  StateVector(std::vector<std::string> labels, Eigen::VectorXcd amplitudes);

  /// Basis labelled "0", "1", ... in index order.
  explicit StateVector(Eigen::VectorXcd amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm_squared() const noexcept { return amplitudes_.squaredNorm(); }

  /// Two-level state sqrt(1-p1)|0> + sqrt(p1)|1>.
  static StateVector two_level(double p1);

 private:
  std::vector<std::string> labels_;
  Eigen::VectorXcd amplitudes_;
};

/// Diagonal operator in the state basis. For the collapse coupling the
/// eigenvalues are effective nucleon counts per correlation cell.
class DiagonalObservable {
 public:
  explicit DiagonalObservable(Eigen::VectorXd eigenvalues, std::string unit = "nucleons/cell");
  DiagonalObservable(std::initializer_list<double> eigenvalues);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  double operator[](std::size_t i) const { return eigenvalues_[static_cast<Eigen::Index>(i)]; }
  const std::string& unit() const noexcept { return unit_; }

 private:
  Eigen::VectorXd eigenvalues_;
  std::string unit_;
};

/// Rescales by a positive real factor. Throws ZeroNorm for a null vector.
StateVector normalize(StateVector state);

/// Born weights |c_i|^2. Throws NotNormalized when the state is off the unit sphere.
std::vector<double> probabilities(const StateVector& state);

double expectation(const DiagonalObservable& obs, const StateVector& state);

/// sum p_i M_i^2 - <M>^2, clamped at zero against rounding.
double variance(const DiagonalObservable& obs, const StateVector& state);

}  // namespace csl
