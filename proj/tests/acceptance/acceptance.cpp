// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csl/bounds.hpp"
#include "csl/density.hpp"
#include "csl/ensemble.hpp"
#include "csl/noise.hpp"
#include "csl/rng.hpp"
#include "csl/ruin.hpp"
#include "cslsim/cli.hpp"
#include "support/oracles.hpp"

namespace {

using namespace csl;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

EnsembleConfig born_ensemble() {
  // lambda deltaM^2 t_final = 20 with deltaM = 1.
  return EnsembleConfig{
      .n_trajectories = 10'000,
      .seed = 42,
      .initial = StateVector::two_level(0.3),
      .hamiltonian = zero_hamiltonian(2),
      .observables = {DiagonalObservable{0.0, 1.0}},
      .params = CslParams{.lambda = 1e-2, .dt = 1.0},
      .options = TrajectoryOptions{.t_final = 2000.0, .sample_every = 50},
  };
}

const EnsembleResult& born_result() {
  static const EnsembleResult r = run_ensemble(born_ensemble());
  return r;
}

Verdict born_rule() {
  const auto& tally = born_result().tally;
  const double f1 = tally.frequency(1);
  const double u = tally.undecided_fraction();
  const double band = 3.0 * testing::binomial_sigma(0.3, 10'000);
  return {std::abs(f1 - 0.3) <= band && u < 0.01,
          fmt("outcome-1 frequency %.4f (0.30 +/- %.4f), undecided %.4f", f1, band, u)};
}

Verdict martingale() {
  const auto& rec = born_result().martingale;
  const double z = martingale_test(rec, std::vector<double>{0.7, 0.3});

  // Negative control: the two-level Ito walk with a drift of +0.1 dt on p.
  const std::size_t n = 10'000, steps = 100, every = 5;
  const double dt = 0.01, sqrt_lambda = 1.0;
  std::vector<double> grid;
  for (std::size_t k = 0; k <= steps; k += every) grid.push_back(static_cast<double>(k) * dt);
  MartingaleAccumulator acc(grid, 2);
  for (std::size_t k = 0; k < n; ++k) {
    RandomStream rs(77, k);
    double p = 0.3;
    std::vector<std::vector<double>> path;
    for (std::size_t s = 0; s <= steps; ++s) {
      if (s % every == 0) path.push_back({1.0 - p, p});
      p = std::clamp(p + 2.0 * sqrt_lambda * p * (1.0 - p) * std::sqrt(dt) * rs.normal() + 0.1 * dt, 0.0, 1.0);
    }
    acc.add(path);
  }
  const double z_drift = martingale_test(acc.finish(), std::vector<double>{0.7, 0.3});
  const std::size_t samples = rec.times.size();
  return {z < kMartingaleZThreshold && samples >= 20 && z_drift > 10.0,
          fmt("max z %.3f over %zu sample times; drifted control %.1f", z, samples, z_drift)};
}

Verdict master_equation_agreement() {
  const EnsembleConfig cfg{
      .n_trajectories = 10'000,
      .seed = 3,
      .initial = StateVector::two_level(0.5),
      .hamiltonian = zero_hamiltonian(2),
      .observables = {DiagonalObservable{0.0, 1.0}},
      .params = CslParams{.lambda = 1.0, .dt = 1e-3},
  };
  const std::vector<double> times{1.0, 2.0, 4.0};
  const auto avg = ensemble_average_density(cfg, times);
  const auto rho0 = DensityMatrix::pure(cfg.initial);
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double closed = 0.5 * std::exp(-0.5 * times[k]);
    const double master =
        std::abs(evolve_density(rho0, cfg.hamiltonian, cfg.observables.front(), cfg.params, times[k])(0, 1));
    const double traj = std::abs(avg[k](0, 1));
    const double rel = std::abs(traj / closed - 1.0);
    ok = ok && rel <= 0.05 && std::abs(master / closed - 1.0) <= 1e-6;
    detail += fmt("%st=%g rel %.4f", k ? ", " : "", times[k], rel);
  }
  return {ok, detail};
}

Eigen::MatrixXcd random_density(std::mt19937_64& gen, int dim) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = {g(gen), g(gen)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

Verdict linearity() {
  std::mt19937_64 gen(11);
  const int dim = 3;
  const DensityMatrix r1(random_density(gen, dim)), r2(random_density(gen, dim));
  Eigen::MatrixXcd hm = Eigen::MatrixXcd::Random(dim, dim);
  const Hamiltonian h = 0.5 * (hm + hm.adjoint());
  const DiagonalObservable m{0.0, 1.0, 2.5};
  const CslParams params{.lambda = 0.7, .dt = 1e-3};
  const double t = 2.0;
  const Eigen::MatrixXcd e1 = evolve_density(r1, h, m, params, t).matrix();
  const Eigen::MatrixXcd e2 = evolve_density(r2, h, m, params, t).matrix();
  double worst = 0.0;
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    const DensityMatrix mix(a * r1.matrix() + (1.0 - a) * r2.matrix());
    const Eigen::MatrixXcd lhs = evolve_density(mix, h, m, params, t).matrix();
    worst = std::max(worst, (lhs - (a * e1 + (1.0 - a) * e2)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-8, fmt("max entry deviation %.2e", worst)};
}

Verdict ruin() {
  double worst = 0.0;
  for (int a = 1; a <= 20; ++a)
    for (int b = 1; b <= 20; ++b)
      worst = std::max(worst, std::abs(ruin_probability_exact({a, b}) - static_cast<double>(a) / (a + b)));
  bool sim_ok = true;
  double worst_z = 0.0;
  for (const RuinGame g : {RuinGame{1, 1}, RuinGame{3, 1}, RuinGame{2, 7}, RuinGame{10, 10}}) {
    const double p = ruin_probability_exact(g);
    const RuinStats s = ruin_simulate(g, 10'000, 99);
    const double z = std::abs(s.win_frequency - p) / testing::binomial_sigma(p, 10'000);
    worst_z = std::max(worst_z, z);
    sim_ok = sim_ok && z <= 3.0;
  }
  return {worst <= 1e-10 && sim_ok, fmt("max |P - a/(a+b)| %.2e, worst simulation z %.2f", worst, worst_z)};
}

Verdict pointer_bound() {
  const double lower = lambda_lower_bound_pointer(PointerSpec{1e15, 1e9, seconds(1e-7)}).in(units::per_second);
  const double enhanced = enhanced_lambda(per_seconds(lower)).in(units::per_second);
  return {lower == 1e-17 && std::log10(lower) == -17.0 && std::abs(enhanced / 1e-9 - 1.0) < 1e-15,
          fmt("lower %.17g, enhanced %.17g", lower, enhanced)};
}

Verdict table_regression() {
  const auto table = bounds_table();
  const std::vector<int> expected{13, 14, 6, 18, 9, 17, 8, 15};
  bool ok = table.size() == expected.size();
  for (std::size_t i = 0; ok && i < table.size(); ++i) {
    ok = table[i].orders_above_conventional == expected[i] &&
         table[i].lambda_max().si() == std::pow(10.0, expected[i] - 17);
  }
  const auto find = [&](std::string_view prefix) {
    return *std::find_if(table.begin(), table.end(), [&](const auto& r) { return r.name.starts_with(prefix); });
  };
  const Quantity enhanced = enhanced_lambda(per_seconds(kConventionalLambda));
  const auto xray = find("spontaneous X-ray"), igm = find("heating of the intergalactic");
  ok = ok && xray.orders_above_enhanced() == -2 && xray.excludes(enhanced) && igm.orders_above_enhanced() == 0 &&
       !igm.excludes(enhanced);
  return {ok, fmt("%zu rows; X-ray %+d, IGM %+d from enhanced", table.size(), xray.orders_above_enhanced(),
                  igm.orders_above_enhanced())};
}

Verdict confrontation_masses() {
  const Quantity t = seconds(kDiffractionCoherenceTime);
  const double m17 = std::log10(mass_to_confront(per_seconds(1e-17), t).in(units::dalton));
  const double m9 = std::log10(mass_to_confront(per_seconds(1e-9), t).in(units::dalton));
  bool exact = true;
  for (double mass : {1.0, 720.0, 1e4, 3.3e6}) {
    const double b1 = diffraction_lambda_bound(daltons(mass), t).si();
    const double b2 = diffraction_lambda_bound(daltons(2.0 * mass), t).si();
    exact = exact && b1 == 4.0 * b2;
  }
  return {std::abs(m17 - 9.0) <= 1.0 && std::abs(m9 - 5.0) <= 1.0 && exact,
          fmt("log10 mass %.2f and %.2f; doubling ratio exact: %s", m17, m9, exact ? "yes" : "no")};
}

Verdict colored_noise() {
  const double omega = 1.0, dt = 0.05;
  NoiseProcess noise(2718, 0, 1);
  std::vector<double> rate(1u << 20);
  for (auto& v : rate) v = noise.increment(0, dt, CutoffSpectrum{omega}) / dt;
  const std::size_t seg = 1u << 13;
  const auto power = testing::welch_periodogram(rate, seg);
  const double ratio = testing::band_power(power, seg, dt, 5.0 * omega) / testing::band_power(power, seg, dt, 0.1 * omega);

  const double h = 0.01;
  NoiseProcess white(3141, 0, 1);
  const std::size_t n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = white.increment(0, h, CutoffSpectrum{1e6});
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = (sum2 - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
  return {ratio < 0.1 && std::abs(var / h - 1.0) <= 0.01,
          fmt("S(5w)/S(0.1w) = %.4f; broadband variance/dt = %.4f", ratio, var / h)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "cslsim_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"trajectory", "--p0", "0.3", "--seed", "5"},
      {"ensemble", "--p0", "0.3", "--n", "2000", "--seed", "42"},
      {"ruin", "--a", "3", "--b", "1", "--n", "10000"},
      {"bounds"},
      {"collapse-time", "--lambda", "1e-9"},
      {"heating"},
  };
  bool ok = true;
  std::size_t files = 0;
  for (const auto& cmd : commands) {
    for (const char* format : {"csv", "json"}) {
      std::string reference;
      for (const char* threads : {"1", "2", "4", "1"}) {
        const auto path = dir / (cmd[0] + "_" + format + "_" + threads + ".out");
        std::filesystem::remove(path);
        auto args = cmd;
        args.insert(args.end(), {"--format", format, "--threads", threads, "--out", path.string()});
        std::ostringstream out, err;
        ok = ok && cslsim::run(args, out, err) == 0;
        const std::string text = slurp(path);
        if (reference.empty()) reference = text;
        ok = ok && !text.empty() && text == reference;
        ++files;
      }
    }
  }
  std::filesystem::remove_all(dir);
  return {ok, fmt("6 commands x 2 formats x threads {1,2,4,1}: %zu files compared", files)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"Born rule emergence", born_rule},
      {"martingale property", martingale},
      {"trajectory average matches master equation", master_equation_agreement},
      {"linearity of the master equation", linearity},
      {"gambler's ruin exactness", ruin},
      {"pointer lower bound", pointer_bound},
      {"bounds table regression", table_regression},
      {"confrontation masses", confrontation_masses},
      {"colored noise spectrum", colored_noise},
      {"CLI determinism across thread counts", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %zu: %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
