#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "csl/bounds.hpp"
#include "csl/dynamics.hpp"
#include "csl/ensemble.hpp"

namespace cslsim {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal text that reads back to the same double (17 significant digits).
std::string format_double(double v);
double parse_double(const std::string& s);

/// Comment-prefixed metadata, one header row, then data rows. Metadata lines
/// are "# key=value"; the config travels as "# config=<json>".
struct CsvDocument {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvDocument& doc,
               const std::vector<std::string>& meta_order);
CsvDocument read_csv(std::istream& in);

// Records <-> tabular forms. Each pair round-trips exactly.
CsvDocument trajectory_table(const csl::Trajectory& traj);
std::vector<csl::TrajectorySample> trajectory_samples_from(const CsvDocument& doc);
nlohmann::json trajectory_json(const csl::Trajectory& traj);
std::vector<csl::TrajectorySample> trajectory_samples_from(const nlohmann::json& result);

CsvDocument martingale_table(const csl::MartingaleRecord& record);
csl::MartingaleRecord martingale_from(const CsvDocument& doc);
nlohmann::json martingale_json(const csl::MartingaleRecord& record);
csl::MartingaleRecord martingale_from(const nlohmann::json& result);

CsvDocument bounds_csv(const std::vector<csl::ExperimentBound>& table);
std::vector<csl::ExperimentBound> bounds_from(const CsvDocument& doc);
nlohmann::json bounds_json(const std::vector<csl::ExperimentBound>& table);
std::vector<csl::ExperimentBound> bounds_from(const nlohmann::json& result);

}  // namespace cslsim
