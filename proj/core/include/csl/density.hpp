#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "csl/dynamics.hpp"
#include "csl/quantum_state.hpp"

namespace csl {

inline constexpr double kDensityTolerance = 1e-12;

/// Hermitian, unit-trace, non-negative-diagonal complex matrix.
class DensityMatrix {
 public:
  /// Throws InvalidDensityMatrix if the invariants fail at kDensityTolerance.
  explicit DensityMatrix(Eigen::MatrixXcd matrix);

  static DensityMatrix pure(const StateVector& state);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Throws InvalidDensityMatrix unless `m` satisfies the invariants within `tolerance`.
  static void check(const Eigen::MatrixXcd& m, double tolerance = kDensityTolerance);

 private:
  struct Unchecked {};
  DensityMatrix(Eigen::MatrixXcd matrix, Unchecked) : matrix_(std::move(matrix)) {}
  friend DensityMatrix evolve_density(const DensityMatrix&, const Hamiltonian&,
                                      std::span<const DiagonalObservable>, const CslParams&,
                                      double);

  Eigen::MatrixXcd matrix_;
};

/// Noise-averaged dynamics drho/dt = -i[H, rho] - (lambda/2) sum_k [M_k, [M_k, rho]],
/// integrated with fixed-step RK4. The step is params.dt, shortened when
/// needed to keep (|H| + lambda dM^2) h <= 0.05.
DensityMatrix evolve_density(const DensityMatrix& rho, const Hamiltonian& h,
                             std::span<const DiagonalObservable> observables,
                             const CslParams& params, double t_final);

DensityMatrix evolve_density(const DensityMatrix& rho, const Hamiltonian& h,
                             const DiagonalObservable& m, const CslParams& params, double t_final);

/// (lambda/2)(M_i - M_j)^2, the decay rate of rho_ij when H = 0.
double offdiag_decay_rate(const DiagonalObservable& m, std::size_t i, std::size_t j, double lambda);

}  // namespace csl
