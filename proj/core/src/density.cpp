#include "csl/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csl/error.hpp"

namespace csl {

void DensityMatrix::check(const Eigen::MatrixXcd& m, double tolerance) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidDensityMatrix, "density matrix must be square and non-empty");
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerance) {
    throw Error(ErrorCode::InvalidDensityMatrix, "not Hermitian, max deviation " + std::to_string(asym));
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tolerance) {
    throw Error(ErrorCode::InvalidDensityMatrix, "trace is " + std::to_string(tr.real()));
  }
  if (m.diagonal().real().minCoeff() < -tolerance) {
    throw Error(ErrorCode::InvalidDensityMatrix, "negative population");
  }
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) { check(matrix_); }

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  const StateVector unit = normalize(state);
  return DensityMatrix(unit.amplitudes() * unit.amplitudes().adjoint());
}

namespace {

// L(rho) = -i[H, rho] - (lambda/2) sum_k [M_k, [M_k, rho]]. For diagonal M
// the double commutator is elementwise: (M_i - M_j)^2 rho_ij.
class MasterEquation {
 public:
  MasterEquation(const Hamiltonian& h, std::span<const DiagonalObservable> observables, double lambda)
      : h_(h), has_h_(!h.isZero(0.0)), damping_(Eigen::MatrixXd::Zero(h.rows(), h.cols())) {
    for (const auto& m : observables) {
      const Eigen::ArrayXd ev = m.eigenvalues().array();
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        damping_.row(i).array() += 0.5 * lambda * (ev(i) - ev.transpose()).square();
      }
    }
  }

  void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
    out = -(damping_.cast<Complex>().array() * rho.array()).matrix();
    if (has_h_) {
      const Complex minus_i(0.0, -1.0);
      out.noalias() += minus_i * (h_ * rho);
      out.noalias() -= minus_i * (rho * h_);
    }
  }

  double stiffness() const {
    const double h_norm = has_h_ ? h_.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
    return 2.0 * h_norm + damping_.maxCoeff();
  }

 private:
  const Hamiltonian& h_;
  bool has_h_;
  Eigen::MatrixXd damping_;
};

}  // namespace

DensityMatrix evolve_density(const DensityMatrix& rho, const Hamiltonian& h,
                             std::span<const DiagonalObservable> observables,
                             const CslParams& params, double t_final) {
  params.validate();
  DensityMatrix::check(rho.matrix());
  const auto n = static_cast<Eigen::Index>(rho.dimension());
  if (h.rows() != n || h.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian dimension differs from rho");
  }
  check_hermitian(h);
  for (const auto& m : observables) {
    if (m.dimension() != rho.dimension()) {
      throw Error(ErrorCode::DimensionMismatch, "observable dimension differs from rho");
    }
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::InvalidParameter, "t_final must be finite and >= 0");
  }
  if (t_final == 0.0) return rho;

  const MasterEquation eq(h, observables, params.lambda);
  double h_max = params.dt;
  if (const double s = eq.stiffness(); s > 0.0) h_max = std::min(h_max, 0.05 / s);
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / h_max));
  const double step = t_final / static_cast<double>(steps);

  Eigen::MatrixXcd r = rho.matrix();
  Eigen::MatrixXcd k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  for (std::size_t s = 0; s < steps; ++s) {
    eq.apply(r, k1);
    tmp = r + (0.5 * step) * k1;
    eq.apply(tmp, k2);
    tmp = r + (0.5 * step) * k2;
    eq.apply(tmp, k3);
    tmp = r + step * k3;
    eq.apply(tmp, k4);
    r += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix(std::move(r), DensityMatrix::Unchecked{});
}

DensityMatrix evolve_density(const DensityMatrix& rho, const Hamiltonian& h,
                             const DiagonalObservable& m, const CslParams& params, double t_final) {
  return evolve_density(rho, h, std::span<const DiagonalObservable>(&m, 1), params, t_final);
}

double offdiag_decay_rate(const DiagonalObservable& m, std::size_t i, std::size_t j, double lambda) {
  if (i >= m.dimension() || j >= m.dimension()) {
    throw Error(ErrorCode::IndexOutOfRange, "index outside observable basis");
  }
  if (i == j) {
    throw Error(ErrorCode::InvalidParameter, "decay rate is defined for i != j");
  }
  const double dm = m[i] - m[j];
  return 0.5 * lambda * dm * dm;
}

}  // namespace csl
