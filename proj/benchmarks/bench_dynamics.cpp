#include <benchmark/benchmark.h>

#include "csl/density.hpp"
#include "csl/ensemble.hpp"
#include "csl/ruin.hpp"

namespace {

using namespace csl;

void BM_SdeStep(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Eigen::VectorXcd c = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(dim));
  StateVector psi = normalize(StateVector(c));
  Eigen::VectorXd m = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(dim), 0.0, 1.0);
  const DiagonalObservable obs(m);
  const Hamiltonian h = zero_hamiltonian(dim);
  const CslParams params{.lambda = 1.0, .dt = 1e-6};
  NoiseProcess noise(1, 0, 1);
  for (auto _ : state) {
    psi = sde_step(psi, h, obs, params, noise);
    benchmark::DoNotOptimize(psi);
  }
}
BENCHMARK(BM_SdeStep)->Arg(2)->Arg(8)->Arg(64);

void BM_EvolveDensity(benchmark::State& state) {
  const DensityMatrix rho = DensityMatrix::pure(StateVector::two_level(0.5));
  Hamiltonian h = zero_hamiltonian(2);
  h(0, 1) = h(1, 0) = 0.3;
  const DiagonalObservable m{0.0, 1.0};
  const CslParams params{.lambda = 1.0, .dt = 1e-3};
  for (auto _ : state) benchmark::DoNotOptimize(evolve_density(rho, h, m, params, 1.0));
}
BENCHMARK(BM_EvolveDensity);

void BM_BornEnsemble(benchmark::State& state) {
  const EnsembleConfig cfg{
      .n_trajectories = static_cast<std::size_t>(state.range(0)),
      .seed = 42,
      .initial = StateVector::two_level(0.3),
      .hamiltonian = zero_hamiltonian(2),
      .observables = {DiagonalObservable{0.0, 1.0}},
      .params = CslParams{.lambda = 1e-2, .dt = 1.0},
      .options = TrajectoryOptions{.t_final = 2000.0, .sample_every = 50},
  };
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(cfg));
}
BENCHMARK(BM_BornEnsemble)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RuinSimulate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ruin_simulate({10, 10}, 1000, 7));
}
BENCHMARK(BM_RuinSimulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
