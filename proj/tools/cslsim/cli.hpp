#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cslsim {

enum class Command { Trajectory, Ensemble, Ruin, Bounds, CollapseTime, Heating };
enum class Format { Csv, Json };

inline constexpr std::uint64_t kDefaultSeed = 20'240'611;

std::string_view to_string(Command c);
std::string_view to_string(Format f);

/// Two-level collapse run: basis {0, 1} with M = (0, deltaM) and
/// H = coupling * sigma_x.
struct DynamicsArgs {
  double p0 = 0.3;  // initial weight of outcome 1
  double lambda = 1e-2;
  double delta_m = 1.0;
  double coupling = 0.0;
  double dt = 0.0;       // 0 = 1e-2 / (lambda deltaM^2)
  double t_final = 0.0;  // 0 = 20 / (lambda deltaM^2)
  std::size_t sample_every = 0;  // 0 = about 40 samples per run
  double epsilon = 1e-3;
  double cutoff = 0.0;  // omega_max; 0 = white noise
  std::size_t n = 10'000;
};

struct RuinArgs {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::size_t n = 10'000;
};

struct CollapseTimeArgs {
  double lambda = 1e-17;
  double delta_m_squared = 0.0;  // 0 = derive from the pointer
  double nucleons = 1e15;
  double per_cell = 1e9;
  double settle_time = 1e-7;
};

struct HeatingArgs {
  double lambda = 1e-17;
  double mass_kg = 1.67262192369e-27;
  double r_c_cm = 1e-5;
};

struct RunConfig {
  Command command = Command::Bounds;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::filesystem::path> out;
  Format format = Format::Csv;
  unsigned threads = 1;

  DynamicsArgs dynamics;
  RuinArgs ruin;
  CollapseTimeArgs collapse;
  HeatingArgs heating;

  /// Parameters that determine the output. Thread count and output path
  /// are excluded: they never change results.
  nlohmann::json describe() const;
};

/// Bad command line. exit_code() is 2, or 0 when help was requested.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, int exit_code)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Parses and fully validates argv (without the program name). Derived
/// defaults are filled in, so the result is ready to execute.
RunConfig parse_args(std::span<const std::string> args);

/// Runs the command and writes its output to config.out, or to `out` when no
/// path is given. Returns 0 on success and 1 on a runtime error, with a
/// one-line diagnostic on `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit codes 0 / 1 / 2.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cslsim
