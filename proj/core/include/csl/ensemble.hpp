#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "csl/density.hpp"
#include "csl/dynamics.hpp"
#include "csl/outcome.hpp"
#include "csl/quantum_state.hpp"

namespace csl {

struct EnsembleConfig {
  std::size_t n_trajectories = 1;
  std::uint64_t seed = 0;
  StateVector initial;
  Hamiltonian hamiltonian;
  std::vector<DiagonalObservable> observables;
  CslParams params;
  TrajectoryOptions options;
  unsigned threads = 1;  // never affects results

  void validate() const;
};

struct OutcomeTally {
  std::vector<std::size_t> counts;
  std::size_t undecided = 0;
  std::size_t total = 0;

  std::size_t decided() const noexcept { return total - undecided; }
  /// Fraction of decided trajectories that ended on `outcome`.
  double frequency(std::size_t outcome) const;
  double undecided_fraction() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(undecided) / static_cast<double>(total);
  }
};

/// Ensemble mean and standard error of each p_i on the common sample grid.
/// Trajectories that stopped early contribute their stopped state.
struct MartingaleRecord {
  std::vector<double> times;
  std::vector<std::vector<double>> mean;            // [time][outcome]
  std::vector<std::vector<double>> standard_error;  // [time][outcome]
  std::size_t n_trajectories = 0;
};

/// Builds a MartingaleRecord from per-trajectory probability paths added in
/// a fixed order. Two-pass statistics are taken in `finish`.
class MartingaleAccumulator {
 public:
  MartingaleAccumulator(std::vector<double> times, std::size_t n_outcomes);

  /// `path[k]` holds p(t_k); must cover every grid time.
  void add(const std::vector<std::vector<double>>& path);

  MartingaleRecord finish() const;

 private:
  std::vector<double> times_;
  std::size_t n_outcomes_;
  std::vector<std::vector<std::vector<double>>> paths_;
};

struct EnsembleResult {
  OutcomeTally tally;
  MartingaleRecord martingale;
  /// Per trajectory, time of classification; negative when undecided.
  std::vector<double> collapse_times;
};

/// Runs config.n_trajectories independent trajectories. Trajectory k draws
/// its noise from stream k of config.seed, so the result is independent of
/// the thread count.
EnsembleResult run_ensemble(const EnsembleConfig& config);

/// Ensemble average of |psi><psi| at each requested time, integrating every
/// trajectory to the last time without stopping at collapse.
std::vector<Eigen::MatrixXcd> ensemble_average_density(const EnsembleConfig& config,
                                                       std::span<const double> times);

/// Threshold of martingale_test.
inline constexpr double kMartingaleZThreshold = 3.0;

/// max over times and outcomes of |mean p_i(t) - p_i(0)| / SE. Differences
/// below 1e-12 count as zero so that frozen ensembles give exactly 0.
/// Throws EmptyRecord.
double martingale_test(const MartingaleRecord& record, std::span<const double> p0);

}  // namespace csl
