#pragma once

#include <span>

#include <Eigen/Dense>

#include "csl/dynamics.hpp"

namespace csl::detail {

void validate_system(const StateVector& state, const Hamiltonian& h,
                     std::span<const DiagonalObservable> observables, const CslParams& params,
                     const NoiseProcess& noise);

/// Allocation-free Euler-Maruyama stepper over raw amplitudes. Inputs must
/// already have passed validate_system. Holds references; keep the
/// Hamiltonian and observables alive.
class Stepper {
 public:
  Stepper(const Hamiltonian& h, std::span<const DiagonalObservable> observables,
          const CslParams& params);

  void step(Eigen::VectorXcd& psi, NoiseProcess& noise);

 private:
  const Hamiltonian& h_;
  bool has_h_;
  std::span<const DiagonalObservable> observables_;
  CslParams params_;
  double sqrt_lambda_;
  Eigen::VectorXcd scratch_;
  Eigen::VectorXd shifted_;
};

}  // namespace csl::detail
