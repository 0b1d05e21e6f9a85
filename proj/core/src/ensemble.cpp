#include "csl/ensemble.hpp"

#include <cmath>
#include <string>

#include "csl/error.hpp"
#include "parallel.hpp"
#include "stepper.hpp"

namespace csl {

void EnsembleConfig::validate() const {
  if (n_trajectories == 0) {
    throw Error(ErrorCode::InvalidParameter, "n_trajectories must be >= 1");
  }
  // A throwaway noise process lets validate_system check channel counts.
  const NoiseProcess probe(seed, 0, std::max<std::size_t>(observables.size(), 1));
  detail::validate_system(initial, hamiltonian, observables, params, probe);
  options.validate();
}

double OutcomeTally::frequency(std::size_t outcome) const {
  if (outcome >= counts.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "outcome " + std::to_string(outcome));
  }
  const std::size_t n = decided();
  return n == 0 ? 0.0 : static_cast<double>(counts[outcome]) / static_cast<double>(n);
}

MartingaleAccumulator::MartingaleAccumulator(std::vector<double> times, std::size_t n_outcomes)
    : times_(std::move(times)), n_outcomes_(n_outcomes) {}

void MartingaleAccumulator::add(const std::vector<std::vector<double>>& path) {
  if (path.size() != times_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "path does not cover the sample grid");
  }
  for (const auto& p : path) {
    if (p.size() != n_outcomes_) {
      throw Error(ErrorCode::DimensionMismatch, "path entry has wrong outcome count");
    }
  }
  paths_.push_back(path);
}

MartingaleRecord MartingaleAccumulator::finish() const {
  MartingaleRecord record;
  record.times = times_;
  record.n_trajectories = paths_.size();
  const auto n = static_cast<double>(paths_.size());
  record.mean.assign(times_.size(), std::vector<double>(n_outcomes_, 0.0));
  record.standard_error.assign(times_.size(), std::vector<double>(n_outcomes_, 0.0));
  if (paths_.empty()) return record;

  for (std::size_t t = 0; t < times_.size(); ++t) {
    for (std::size_t i = 0; i < n_outcomes_; ++i) {
      double sum = 0.0;
      for (const auto& path : paths_) sum += path[t][i];
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto& path : paths_) {
        const double d = path[t][i] - mean;
        ss += d * d;
      }
      record.mean[t][i] = mean;
      record.standard_error[t][i] = paths_.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    }
  }
  return record;
}

namespace {

struct Member {
  Outcome outcome;
  double collapse_time = -1.0;
  std::vector<std::vector<double>> path;  // p on the common grid
};

}  // namespace

EnsembleResult run_ensemble(const EnsembleConfig& config) {
  config.validate();
  const std::size_t n_outcomes = config.initial.dimension();
  const std::size_t n_steps = step_count(config.options.t_final, config.params.dt);
  const std::size_t every = config.options.sample_every;

  std::vector<double> grid;
  for (std::size_t k = 0; k <= n_steps; k += every) grid.push_back(static_cast<double>(k) * config.params.dt);
  if (n_steps % every != 0) grid.push_back(static_cast<double>(n_steps) * config.params.dt);

  std::vector<Member> members(config.n_trajectories);
  detail::parallel_for(config.n_trajectories, config.threads, [&](std::size_t idx) {
    NoiseProcess noise(config.seed, idx, config.observables.size());
    const Trajectory traj = evolve_trajectory(config.initial, config.hamiltonian, config.observables,
                                              config.params, noise, config.options);
    Member& m = members[idx];
    m.outcome = traj.outcome;
    if (traj.outcome) m.collapse_time = traj.final_time();
    // Samples sit on the grid except possibly the last one, which marks the
    // stopping step. After stopping, the stopped state is carried forward.
    m.path.reserve(grid.size());
    std::size_t s = 0;
    for (double t : grid) {
      while (s + 1 < traj.samples.size() && traj.samples[s + 1].time <= t) ++s;
      m.path.push_back(traj.samples[s].probabilities);
    }
  });

  EnsembleResult result;
  result.tally.counts.assign(n_outcomes, 0);
  result.tally.total = config.n_trajectories;
  MartingaleAccumulator acc(grid, n_outcomes);
  result.collapse_times.reserve(members.size());
  for (const auto& m : members) {
    if (m.outcome) {
      ++result.tally.counts[*m.outcome];
    } else {
      ++result.tally.undecided;
    }
    result.collapse_times.push_back(m.collapse_time);
    acc.add(m.path);
  }
  result.martingale = acc.finish();
  return result;
}

std::vector<Eigen::MatrixXcd> ensemble_average_density(const EnsembleConfig& config,
                                                       std::span<const double> times) {
  config.validate();
  if (times.empty()) return {};
  std::vector<std::size_t> at_step;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
      throw Error(ErrorCode::InvalidParameter, "times must be non-negative and sorted");
    }
    at_step.push_back(static_cast<std::size_t>(std::llround(times[i] / config.params.dt)));
  }

  const auto d = static_cast<Eigen::Index>(config.initial.dimension());
  std::vector<std::vector<Eigen::MatrixXcd>> per_member(config.n_trajectories);
  detail::parallel_for(config.n_trajectories, config.threads, [&](std::size_t idx) {
    NoiseProcess noise(config.seed, idx, config.observables.size());
    detail::Stepper stepper(config.hamiltonian, config.observables, config.params);
    Eigen::VectorXcd psi = config.initial.amplitudes();
    auto& out = per_member[idx];
    out.reserve(times.size());
    std::size_t k = 0;
    for (std::size_t target : at_step) {
      for (; k < target; ++k) stepper.step(psi, noise);
      out.push_back(psi * psi.adjoint());
    }
  });

  std::vector<Eigen::MatrixXcd> avg(times.size(), Eigen::MatrixXcd::Zero(d, d));
  for (const auto& member : per_member) {
    for (std::size_t t = 0; t < times.size(); ++t) avg[t] += member[t];
  }
  for (auto& m : avg) m /= static_cast<double>(config.n_trajectories);
  return avg;
}

double martingale_test(const MartingaleRecord& record, std::span<const double> p0) {
  if (record.times.empty() || record.mean.empty()) {
    throw Error(ErrorCode::EmptyRecord, "martingale record has no samples");
  }
  double worst = 0.0;
  for (std::size_t t = 0; t < record.mean.size(); ++t) {
    if (record.mean[t].size() != p0.size()) {
      throw Error(ErrorCode::DimensionMismatch, "p0 length differs from record");
    }
    for (std::size_t i = 0; i < p0.size(); ++i) {
      const double diff = std::abs(record.mean[t][i] - p0[i]);
      if (diff <= 1e-12) continue;
      const double se = record.standard_error[t][i];
      const double z = se > 0.0 ? diff / se : std::numeric_limits<double>::infinity();
      worst = std::max(worst, z);
    }
  }
  return worst;
}

}  // namespace csl
