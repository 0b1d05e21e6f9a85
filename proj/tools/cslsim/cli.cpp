#include "cslsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "csl/bounds.hpp"
#include "csl/ensemble.hpp"
#include "csl/error.hpp"
#include "csl/ruin.hpp"
#include "cslsim/report_io.hpp"

namespace cslsim {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Trajectory: return "trajectory";
    case Command::Ensemble: return "ensemble";
    case Command::Ruin: return "ruin";
    case Command::Bounds: return "bounds";
    case Command::CollapseTime: return "collapse-time";
    case Command::Heating: return "heating";
  }
  return "?";
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

nlohmann::json RunConfig::describe() const {
  nlohmann::json j{{"command", to_string(command)}, {"format", to_string(format)}, {"seed", seed}};
  switch (command) {
    case Command::Ensemble:
      j["n"] = dynamics.n;
      [[fallthrough]];
    case Command::Trajectory:
      j["p0"] = dynamics.p0;
      j["lambda"] = dynamics.lambda;
      j["delta_m"] = dynamics.delta_m;
      j["coupling"] = dynamics.coupling;
      j["dt"] = dynamics.dt;
      j["t_final"] = dynamics.t_final;
      j["sample_every"] = dynamics.sample_every;
      j["epsilon"] = dynamics.epsilon;
      j["cutoff"] = dynamics.cutoff;
      break;
    case Command::Ruin:
      j["a"] = ruin.a;
      j["b"] = ruin.b;
      j["n"] = ruin.n;
      break;
    case Command::Bounds:
      break;
    case Command::CollapseTime:
      j["lambda"] = collapse.lambda;
      j["delta_m_squared"] = collapse.delta_m_squared;
      j["nucleons"] = collapse.nucleons;
      j["per_cell"] = collapse.per_cell;
      j["settle_time"] = collapse.settle_time;
      break;
    case Command::Heating:
      j["lambda"] = heating.lambda;
      j["mass_kg"] = heating.mass_kg;
      j["r_c_cm"] = heating.r_c_cm;
      break;
  }
  return j;
}

namespace {

[[noreturn]] void usage(const std::string& message) { throw UsageError(message, 2); }

void add_common(CLI::App& sub, RunConfig& cfg, std::string& format) {
  sub.add_option("--seed", cfg.seed, "Master RNG seed");
  sub.add_option("--out", cfg.out, "Output file (default: standard output)");
  sub.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--threads", cfg.threads, "Worker threads (speed only)")->check(CLI::PositiveNumber);
}

void add_dynamics(CLI::App& sub, DynamicsArgs& d) {
  sub.add_option("--p0", d.p0, "Initial Born weight of outcome 1")->check(CLI::Range(0.0, 1.0));
  sub.add_option("--lambda", d.lambda, "Collapse rate lambda")->check(CLI::NonNegativeNumber);
  sub.add_option("--delta-m", d.delta_m, "Mass-density eigenvalue of outcome 1 (outcome 0 has 0)")
      ->check(CLI::PositiveNumber);
  sub.add_option("--coupling", d.coupling, "Tunnelling amplitude g in H = g sigma_x");
  sub.add_option("--dt", d.dt, "Time step (default 1e-2 / (lambda deltaM^2))")->check(CLI::NonNegativeNumber);
  sub.add_option("--t-final", d.t_final, "Run length (default 20 / (lambda deltaM^2))")->check(CLI::NonNegativeNumber);
  sub.add_option("--sample-every", d.sample_every, "Steps between samples (default: ~40 samples)");
  sub.add_option("--epsilon", d.epsilon, "Collapse threshold: outcome i once p_i >= 1 - epsilon");
  sub.add_option("--cutoff", d.cutoff, "Noise cutoff omega_max; 0 selects white noise")->check(CLI::NonNegativeNumber);
}

void finish_dynamics(DynamicsArgs& d) {
  if (!(d.epsilon > 0.0 && d.epsilon < 0.5)) usage("--epsilon: must lie in (0, 0.5)");
  const double scale = d.lambda * d.delta_m * d.delta_m;
  if (d.dt == 0.0) {
    if (!(scale > 0.0)) usage("--dt: required when --lambda is 0");
    d.dt = 1e-2 / scale;
  }
  if (d.t_final == 0.0) {
    if (!(scale > 0.0)) usage("--t-final: required when --lambda is 0");
    d.t_final = 20.0 / scale;
  }
  if (!std::isfinite(d.dt) || !std::isfinite(d.t_final)) usage("--dt/--t-final: must be finite");
  if (d.t_final < d.dt) usage("--t-final: must be at least one step (--dt)");
  const std::size_t steps = csl::step_count(d.t_final, d.dt);
  if (steps > 100'000'000) usage("--t-final: more than 1e8 steps; raise --dt");
  if (d.sample_every == 0) d.sample_every = std::max<std::size_t>(1, steps / 40);
}

}  // namespace

RunConfig parse_args(std::span<const std::string> args) {
  RunConfig cfg;
  CLI::App app{"cslsim: collapse-model trajectories, Born-rule ensembles, gambler's ruin and lambda bounds",
               "cslsim"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);

  auto* traj = app.add_subcommand("trajectory", "Integrate one two-level collapse trajectory");
  add_dynamics(*traj, cfg.dynamics);
  auto* ens = app.add_subcommand("ensemble", "Born-rule ensemble of two-level trajectories");
  add_dynamics(*ens, cfg.dynamics);
  ens->add_option("--n", cfg.dynamics.n, "Number of trajectories")->check(CLI::PositiveNumber);
  auto* ruin = app.add_subcommand("ruin", "Fair gambler's ruin: exact and simulated");
  ruin->add_option("--a", cfg.ruin.a, "Alice's pennies")->check(CLI::NonNegativeNumber);
  ruin->add_option("--b", cfg.ruin.b, "Bob's pennies")->check(CLI::NonNegativeNumber);
  ruin->add_option("--n", cfg.ruin.n, "Number of games")->check(CLI::PositiveNumber);
  auto* bounds = app.add_subcommand("bounds", "Table of upper bounds on lambda");
  auto* ct = app.add_subcommand("collapse-time", "Collapse time and pointer lower bound on lambda");
  ct->add_option("--lambda", cfg.collapse.lambda, "Collapse rate lambda, s^-1")->check(CLI::PositiveNumber);
  ct->add_option("--dm2", cfg.collapse.delta_m_squared, "Effective deltaM^2 (default n * N)")
      ->check(CLI::NonNegativeNumber);
  ct->add_option("--nucleons", cfg.collapse.nucleons, "Pointer nucleon count N")->check(CLI::PositiveNumber);
  ct->add_option("--per-cell", cfg.collapse.per_cell, "Nucleons per r_C cell n")->check(CLI::PositiveNumber);
  ct->add_option("--settle-time", cfg.collapse.settle_time, "Required settle time, s")->check(CLI::PositiveNumber);
  auto* heat = app.add_subcommand("heating", "Collapse-induced heating per particle");
  heat->add_option("--lambda", cfg.heating.lambda, "Collapse rate lambda, s^-1")->check(CLI::PositiveNumber);
  heat->add_option("--mass-kg", cfg.heating.mass_kg, "Particle mass, kg")->check(CLI::PositiveNumber);
  heat->add_option("--rc-cm", cfg.heating.r_c_cm, "Correlation length r_C, cm")->check(CLI::PositiveNumber);

  std::string format = "csv";
  for (auto* sub : {traj, ens, ruin, bounds, ct, heat}) add_common(*sub, cfg, format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    // Top-level help expands every subcommand with its defaults.
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    throw UsageError(target == &app ? app.help("", CLI::AppFormatMode::All) : target->help(), 0);
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  cfg.format = format == "json" ? Format::Json : Format::Csv;
  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "trajectory") cfg.command = Command::Trajectory;
  if (name == "ensemble") cfg.command = Command::Ensemble;
  if (name == "ruin") cfg.command = Command::Ruin;
  if (name == "bounds") cfg.command = Command::Bounds;
  if (name == "collapse-time") cfg.command = Command::CollapseTime;
  if (name == "heating") cfg.command = Command::Heating;

  switch (cfg.command) {
    case Command::Trajectory:
    case Command::Ensemble:
      finish_dynamics(cfg.dynamics);
      break;
    case Command::Ruin:
      if (cfg.ruin.a + cfg.ruin.b < 1) usage("--a/--b: need a + b >= 1");
      break;
    default:
      break;
  }
  return cfg;
}

namespace {

std::string emit(const RunConfig& cfg, CsvDocument doc, const std::vector<std::string>& meta_order,
                 const nlohmann::json& result) {
  std::ostringstream out;
  if (cfg.format == Format::Json) {
    const nlohmann::json j{{"schema_version", kSchemaVersion},
                           {"tool", "cslsim"},
                           {"command", to_string(cfg.command)},
                           {"config", cfg.describe()},
                           {"result", result}};
    out << j.dump(2) << '\n';
  } else {
    doc.meta["tool"] = "cslsim";
    doc.meta["schema_version"] = std::to_string(kSchemaVersion);
    doc.meta["config"] = cfg.describe().dump();
    std::vector<std::string> order{"tool", "schema_version", "config"};
    order.insert(order.end(), meta_order.begin(), meta_order.end());
    write_csv(out, doc, order);
  }
  return out.str();
}

csl::StateVector two_level_state(const DynamicsArgs& d) { return csl::StateVector::two_level(d.p0); }

csl::Hamiltonian two_level_hamiltonian(const DynamicsArgs& d) {
  csl::Hamiltonian h = csl::zero_hamiltonian(2);
  h(0, 1) = h(1, 0) = d.coupling;
  return h;
}

csl::CslParams csl_params(const DynamicsArgs& d) {
  csl::CslParams p{.lambda = d.lambda, .dt = d.dt};
  if (d.cutoff > 0.0) p.spectrum = csl::CutoffSpectrum{d.cutoff};
  return p;
}

csl::TrajectoryOptions trajectory_options(const DynamicsArgs& d) {
  return {.t_final = d.t_final, .sample_every = d.sample_every, .collapse_epsilon = d.epsilon};
}

std::string outcome_text(const csl::Outcome& o) { return o ? std::to_string(*o) : "undecided"; }

std::string run_trajectory(const RunConfig& cfg) {
  const auto& d = cfg.dynamics;
  csl::NoiseProcess noise(cfg.seed, 0, 1);
  const csl::Trajectory traj =
      csl::evolve_trajectory(two_level_state(d), two_level_hamiltonian(d), csl::DiagonalObservable{0.0, d.delta_m},
                             csl_params(d), noise, trajectory_options(d));
  CsvDocument doc = trajectory_table(traj);
  doc.meta["outcome"] = outcome_text(traj.outcome);
  doc.meta["steps"] = std::to_string(traj.steps_taken);
  return emit(cfg, std::move(doc), {"outcome", "steps"}, trajectory_json(traj));
}

std::string run_ensemble_command(const RunConfig& cfg) {
  const auto& d = cfg.dynamics;
  const csl::EnsembleConfig ec{
      .n_trajectories = d.n,
      .seed = cfg.seed,
      .initial = two_level_state(d),
      .hamiltonian = two_level_hamiltonian(d),
      .observables = {csl::DiagonalObservable{0.0, d.delta_m}},
      .params = csl_params(d),
      .options = trajectory_options(d),
      .threads = cfg.threads,
  };
  const csl::EnsembleResult r = csl::run_ensemble(ec);
  const std::vector<double> p0{1.0 - d.p0, d.p0};
  const double z = csl::martingale_test(r.martingale, p0);

  CsvDocument doc = martingale_table(r.martingale);
  std::vector<std::string> order{"n_trajectories", "total", "undecided", "undecided_fraction"};
  doc.meta["total"] = std::to_string(r.tally.total);
  doc.meta["undecided"] = std::to_string(r.tally.undecided);
  doc.meta["undecided_fraction"] = format_double(r.tally.undecided_fraction());
  nlohmann::json freqs = nlohmann::json::array();
  for (std::size_t i = 0; i < r.tally.counts.size(); ++i) {
    const std::string ci = "count_" + std::to_string(i), fi = "frequency_" + std::to_string(i);
    doc.meta[ci] = std::to_string(r.tally.counts[i]);
    doc.meta[fi] = format_double(r.tally.frequency(i));
    order.push_back(ci);
    order.push_back(fi);
    freqs.push_back(r.tally.frequency(i));
  }
  doc.meta["martingale_max_z"] = format_double(z);
  order.push_back("martingale_max_z");

  const nlohmann::json result{
      {"tally",
       {{"counts", r.tally.counts}, {"undecided", r.tally.undecided}, {"total", r.tally.total}, {"frequencies", freqs}}},
      {"martingale_max_z", z},
      {"martingale", martingale_json(r.martingale)}};
  return emit(cfg, std::move(doc), order, result);
}

std::string run_ruin(const RunConfig& cfg) {
  const csl::RuinGame game{cfg.ruin.a, cfg.ruin.b};
  const double exact = csl::ruin_probability_exact(game);
  const csl::RuinStats s = csl::ruin_simulate(game, cfg.ruin.n, cfg.seed, cfg.threads);
  CsvDocument doc;
  doc.header = {"a", "b", "n_games", "alice_wins", "win_frequency", "exact_probability", "mean_length"};
  doc.rows.push_back({std::to_string(game.alice), std::to_string(game.bob), std::to_string(s.n_games),
                      std::to_string(s.alice_wins), format_double(s.win_frequency), format_double(exact),
                      format_double(s.mean_length)});
  const nlohmann::json result{{"a", game.alice},
                              {"b", game.bob},
                              {"n_games", s.n_games},
                              {"alice_wins", s.alice_wins},
                              {"win_frequency", s.win_frequency},
                              {"exact_probability", exact},
                              {"mean_length", s.mean_length}};
  return emit(cfg, std::move(doc), {}, result);
}

std::string run_bounds(const RunConfig& cfg) {
  const auto table = csl::bounds_table();
  CsvDocument doc = bounds_csv(table);
  doc.meta["conventional_lambda"] = format_double(csl::kConventionalLambda);
  doc.meta["enhanced_lambda"] = format_double(csl::enhanced_lambda(csl::per_seconds(csl::kConventionalLambda)).si());
  doc.meta["r_c_cm"] = format_double(csl::kDefaultCorrelationLengthCm);
  nlohmann::json result = bounds_json(table);
  result["conventional_lambda"] = csl::kConventionalLambda;
  result["enhanced_lambda"] = csl::enhanced_lambda(csl::per_seconds(csl::kConventionalLambda)).si();
  result["r_c_cm"] = csl::kDefaultCorrelationLengthCm;
  return emit(cfg, std::move(doc), {"conventional_lambda", "enhanced_lambda", "r_c_cm"}, result);
}

std::string run_collapse_time(const RunConfig& cfg) {
  const auto& c = cfg.collapse;
  const csl::PointerSpec pointer{c.nucleons, c.per_cell, csl::seconds(c.settle_time)};
  const double dm2 = c.delta_m_squared > 0.0 ? c.delta_m_squared : csl::amplification_factor(pointer);
  const double t = csl::collapse_time_estimate(c.lambda, dm2);
  const double lower = csl::lambda_lower_bound_pointer(pointer).si();
  const csl::CosmologyReport cosmo = csl::cosmology_consistency(csl::per_seconds(c.lambda));
  CsvDocument doc;
  doc.header = {"lambda", "delta_m_squared", "collapse_time", "settle_time", "lambda_lower_bound", "hubble_ratio",
                "cosmology"};
  doc.rows.push_back({format_double(c.lambda), format_double(dm2), format_double(t), format_double(c.settle_time),
                      format_double(lower), format_double(cosmo.ratio), cosmo.compatible ? "compatible" : "strained"});
  const nlohmann::json result{{"lambda", c.lambda},
                              {"delta_m_squared", dm2},
                              {"collapse_time", t},
                              {"settle_time", c.settle_time},
                              {"lambda_lower_bound", lower},
                              {"hubble_ratio", cosmo.ratio},
                              {"cosmology", cosmo.compatible ? "compatible" : "strained"}};
  return emit(cfg, std::move(doc), {}, result);
}

std::string run_heating(const RunConfig& cfg) {
  const auto& h = cfg.heating;
  const double watts = csl::heating_rate_per_particle(csl::per_seconds(h.lambda), csl::kilograms(h.mass_kg),
                                                      csl::centimeters(h.r_c_cm))
                           .in(csl::units::watt);
  CsvDocument doc;
  doc.header = {"lambda", "mass_kg", "r_c_cm", "heating_rate_w"};
  doc.rows.push_back({format_double(h.lambda), format_double(h.mass_kg), format_double(h.r_c_cm), format_double(watts)});
  const nlohmann::json result{
      {"lambda", h.lambda}, {"mass_kg", h.mass_kg}, {"r_c_cm", h.r_c_cm}, {"heating_rate_w", watts}};
  return emit(cfg, std::move(doc), {}, result);
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    switch (config.command) {
      case Command::Trajectory: text = run_trajectory(config); break;
      case Command::Ensemble: text = run_ensemble_command(config); break;
      case Command::Ruin: text = run_ruin(config); break;
      case Command::Bounds: text = run_bounds(config); break;
      case Command::CollapseTime: text = run_collapse_time(config); break;
      case Command::Heating: text = run_heating(config); break;
    }
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + config.out->string() + " for writing");
      file << text;
      if (!file.flush()) throw std::runtime_error("failed writing " + config.out->string());
    } else {
      out << text;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "cslsim: error: " << e.what() << '\n';
    return 1;
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? out : err) << e.what() << (e.exit_code() == 0 ? "" : "\nRun with --help for usage.\n");
    return e.exit_code();
  }
  return execute(cfg, out, err);
}

}  // namespace cslsim
