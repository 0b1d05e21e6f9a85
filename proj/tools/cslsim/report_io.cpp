#include "cslsim/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "csl/error.hpp"

namespace cslsim {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::size_t column(const CsvDocument& doc, const std::string& name) {
  for (std::size_t i = 0; i < doc.header.size(); ++i) {
    if (doc.header[i] == name) return i;
  }
  throw csl::Error(csl::ErrorCode::InvalidData, "missing CSV column " + name);
}

std::size_t count_prefixed(const std::vector<std::string>& header, const std::string& prefix) {
  std::size_t n = 0;
  while (std::find(header.begin(), header.end(), prefix + std::to_string(n)) != header.end()) ++n;
  return n;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw csl::Error(csl::ErrorCode::InvalidData, "not a number: '" + s + "'");
  }
  return v;
}

void write_csv(std::ostream& out, const CsvDocument& doc, const std::vector<std::string>& meta_order) {
  for (const auto& key : meta_order) {
    if (auto it = doc.meta.find(key); it != doc.meta.end()) out << "# " << key << '=' << it->second << '\n';
  }
  for (std::size_t i = 0; i < doc.header.size(); ++i) out << (i ? "," : "") << doc.header[i];
  out << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

CsvDocument read_csv(std::istream& in) {
  CsvDocument doc;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      doc.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
    } else if (!have_header) {
      doc.header = split(line, ',');
      have_header = true;
    } else {
      auto row = split(line, ',');
      if (row.size() != doc.header.size()) {
        throw csl::Error(csl::ErrorCode::InvalidData, "CSV row width differs from header");
      }
      doc.rows.push_back(std::move(row));
    }
  }
  if (!have_header) throw csl::Error(csl::ErrorCode::InvalidData, "CSV has no header row");
  return doc;
}

CsvDocument trajectory_table(const csl::Trajectory& traj) {
  CsvDocument doc;
  const std::size_t k = traj.final_state.dimension();
  doc.header.push_back("time");
  for (std::size_t i = 0; i < k; ++i) doc.header.push_back("p_" + std::to_string(i));
  doc.header.push_back("expectation_M");
  doc.header.push_back("variance_M");
  for (const auto& s : traj.samples) {
    std::vector<std::string> row{format_double(s.time)};
    for (double p : s.probabilities) row.push_back(format_double(p));
    row.push_back(format_double(s.expectation_m));
    row.push_back(format_double(s.variance_m));
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

std::vector<csl::TrajectorySample> trajectory_samples_from(const CsvDocument& doc) {
  const std::size_t k = count_prefixed(doc.header, "p_");
  const std::size_t t_col = column(doc, "time"), e_col = column(doc, "expectation_M"),
                    v_col = column(doc, "variance_M");
  std::vector<csl::TrajectorySample> out;
  for (const auto& row : doc.rows) {
    csl::TrajectorySample s;
    s.time = parse_double(row[t_col]);
    for (std::size_t i = 0; i < k; ++i) s.probabilities.push_back(parse_double(row[column(doc, "p_" + std::to_string(i))]));
    s.expectation_m = parse_double(row[e_col]);
    s.variance_m = parse_double(row[v_col]);
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::json trajectory_json(const csl::Trajectory& traj) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : traj.samples) {
    samples.push_back({{"time", s.time},
                       {"probabilities", s.probabilities},
                       {"expectation_M", s.expectation_m},
                       {"variance_M", s.variance_m}});
  }
  return {{"samples", samples},
          {"steps", traj.steps_taken},
          {"outcome", traj.outcome ? nlohmann::json(*traj.outcome) : nlohmann::json("undecided")}};
}

std::vector<csl::TrajectorySample> trajectory_samples_from(const nlohmann::json& result) {
  std::vector<csl::TrajectorySample> out;
  for (const auto& s : result.at("samples")) {
    out.push_back({s.at("time").get<double>(), s.at("probabilities").get<std::vector<double>>(),
                   s.at("expectation_M").get<double>(), s.at("variance_M").get<double>()});
  }
  return out;
}

CsvDocument martingale_table(const csl::MartingaleRecord& record) {
  CsvDocument doc;
  const std::size_t k = record.mean.empty() ? 0 : record.mean.front().size();
  doc.header.push_back("time");
  for (std::size_t i = 0; i < k; ++i) doc.header.push_back("mean_p_" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) doc.header.push_back("se_p_" + std::to_string(i));
  for (std::size_t t = 0; t < record.times.size(); ++t) {
    std::vector<std::string> row{format_double(record.times[t])};
    for (double v : record.mean[t]) row.push_back(format_double(v));
    for (double v : record.standard_error[t]) row.push_back(format_double(v));
    doc.rows.push_back(std::move(row));
  }
  doc.meta["n_trajectories"] = std::to_string(record.n_trajectories);
  return doc;
}

csl::MartingaleRecord martingale_from(const CsvDocument& doc) {
  csl::MartingaleRecord record;
  const std::size_t k = count_prefixed(doc.header, "mean_p_");
  const std::size_t t_col = column(doc, "time");
  for (const auto& row : doc.rows) {
    record.times.push_back(parse_double(row[t_col]));
    std::vector<double> mean, se;
    for (std::size_t i = 0; i < k; ++i) {
      mean.push_back(parse_double(row[column(doc, "mean_p_" + std::to_string(i))]));
      se.push_back(parse_double(row[column(doc, "se_p_" + std::to_string(i))]));
    }
    record.mean.push_back(std::move(mean));
    record.standard_error.push_back(std::move(se));
  }
  if (auto it = doc.meta.find("n_trajectories"); it != doc.meta.end()) {
    record.n_trajectories = std::stoull(it->second);
  }
  return record;
}

nlohmann::json martingale_json(const csl::MartingaleRecord& record) {
  return {{"times", record.times},
          {"mean", record.mean},
          {"standard_error", record.standard_error},
          {"n_trajectories", record.n_trajectories}};
}

csl::MartingaleRecord martingale_from(const nlohmann::json& result) {
  csl::MartingaleRecord record;
  record.times = result.at("times").get<std::vector<double>>();
  record.mean = result.at("mean").get<std::vector<std::vector<double>>>();
  record.standard_error = result.at("standard_error").get<std::vector<std::vector<double>>>();
  record.n_trajectories = result.at("n_trajectories").get<std::size_t>();
  return record;
}

CsvDocument bounds_csv(const std::vector<csl::ExperimentBound>& table) {
  CsvDocument doc;
  doc.header = {"name", "kind", "distance", "lambda_max", "distance_from_enhanced"};
  for (const auto& b : table) {
    if (b.name.find(',') != std::string::npos) {
      throw csl::Error(csl::ErrorCode::InvalidData, "bound name contains a comma: " + b.name);
    }
    doc.rows.push_back({b.name, std::string(csl::to_string(b.kind)), std::to_string(b.orders_above_conventional),
                        format_double(b.lambda_max().si()), std::to_string(b.orders_above_enhanced())});
  }
  return doc;
}

std::vector<csl::ExperimentBound> bounds_from(const CsvDocument& doc) {
  const std::size_t n = column(doc, "name"), k = column(doc, "kind"), d = column(doc, "distance");
  std::vector<csl::ExperimentBound> out;
  for (const auto& row : doc.rows) {
    out.push_back({row[n], csl::bound_kind_from_string(row[k]), std::stoi(row[d])});
  }
  return out;
}

nlohmann::json bounds_json(const std::vector<csl::ExperimentBound>& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& b : table) {
    rows.push_back({{"name", b.name},
                    {"kind", csl::to_string(b.kind)},
                    {"distance", b.orders_above_conventional},
                    {"lambda_max", b.lambda_max().si()},
                    {"distance_from_enhanced", b.orders_above_enhanced()}});
  }
  return {{"bounds", rows}};
}

std::vector<csl::ExperimentBound> bounds_from(const nlohmann::json& result) {
  std::vector<csl::ExperimentBound> out;
  for (const auto& r : result.at("bounds")) {
    out.push_back({r.at("name").get<std::string>(), csl::bound_kind_from_string(r.at("kind").get<std::string>()),
                   r.at("distance").get<int>()});
  }
  return out;
}

}  // namespace cslsim
