#include "csl/bounds.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "csl/error.hpp"

namespace csl {
namespace {

void require_positive(const Quantity& q, const char* what) {
  if (!(q.si() > 0.0) || !std::isfinite(q.si())) {
    throw Error(ErrorCode::NonPositiveInput, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

void PointerSpec::validate() const {
  if (!(total_nucleons > 0.0) || !(nucleons_per_cell > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "pointer nucleon counts must be positive");
  }
  settle_time.require(dim::time, "settle_time");
  require_positive(settle_time, "settle_time");
}

PointerSpec reference_pointer() { return {1e15, 1e9, seconds(1e-7)}; }

double amplification_factor(const PointerSpec& spec) {
  spec.validate();
  return spec.nucleons_per_cell * spec.total_nucleons;
}

Quantity lambda_lower_bound_pointer(const PointerSpec& spec) {
  return 1.0 / (amplification_factor(spec) * spec.settle_time);
}

Quantity enhanced_lambda(const Quantity& base) {
  base.require(dim::rate, "base rate");
  require_positive(base, "base rate");
  return kEnhancementFactor * base;
}

Quantity diffraction_lambda_bound(const Quantity& mass, const Quantity& coherence_time) {
  mass.require(dim::mass, "mass");
  coherence_time.require(dim::time, "coherence_time");
  require_positive(mass, "mass");
  require_positive(coherence_time, "coherence_time");
  const double nucleons = mass.in(units::dalton);
  if (nucleons < 1.0 - 1e-12) {
    throw Error(ErrorCode::NonPositiveInput, "mass must be at least 1 Da");
  }
  return 1.0 / (nucleons * nucleons * coherence_time);
}

Quantity mass_to_confront(const Quantity& lambda_target, const Quantity& coherence_time) {
  lambda_target.require(dim::rate, "lambda_target");
  coherence_time.require(dim::time, "coherence_time");
  require_positive(lambda_target, "lambda_target");
  require_positive(coherence_time, "coherence_time");
  const double nucleons = 1.0 / std::sqrt((lambda_target * coherence_time).si());
  return daltons(nucleons);
}

Quantity heating_rate_per_particle(const Quantity& lambda, const Quantity& mass,
                                   const Quantity& r_c) {
  lambda.require(dim::rate, "lambda");
  mass.require(dim::mass, "mass");
  r_c.require(dim::length, "r_c");
  require_positive(lambda, "lambda");
  require_positive(mass, "mass");
  require_positive(r_c, "r_c");
  const Quantity rate = 3.0 * lambda * constants::hbar * constants::hbar / (4.0 * mass * r_c * r_c);
  return rate.require(dim::power, "heating rate");
}

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::Laboratory ? "laboratory" : "cosmological";
}

BoundKind bound_kind_from_string(std::string_view s) {
  if (s == "laboratory") return BoundKind::Laboratory;
  if (s == "cosmological") return BoundKind::Cosmological;
  throw Error(ErrorCode::InvalidData, "unknown bound kind '" + std::string(s) + "'");
}

Quantity ExperimentBound::lambda_max() const {
  return per_seconds(std::pow(10.0, orders_above_conventional - 17));
}

bool ExperimentBound::excludes(const Quantity& lambda) const { return lambda > lambda_max(); }

std::vector<ExperimentBound> bounds_table() {
  using K = BoundKind;
  return {
      {"fullerene diffraction", K::Laboratory, 13},
      {"SQUID supercurrent decay", K::Laboratory, 14},
      {"spontaneous X-ray emission from Ge", K::Laboratory, 6},
      {"proton decay", K::Laboratory, 18},
      {"mirror cantilever interferometry", K::Laboratory, 9},
      {"dissociation of cosmic hydrogen", K::Cosmological, 17},
      {"heating of the intergalactic medium", K::Cosmological, 8},
      {"heating of interstellar dust grains", K::Cosmological, 15},
  };
}

std::filesystem::path default_bounds_path() {
  return std::filesystem::path(CSL_DATA_DIR) / "lambda_bounds.json";
}

std::vector<ExperimentBound> load_bounds_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidData, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidData, path.string() + ": " + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != kBoundsSchemaVersion) {
      throw Error(ErrorCode::InvalidData, "unsupported schema_version in " + path.string());
    }
    std::vector<ExperimentBound> rows;
    for (const auto& row : doc.at("bounds")) {
      rows.push_back({row.at("name").get<std::string>(),
                      bound_kind_from_string(row.at("kind").get<std::string>()),
                      row.at("distance").get<int>()});
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidData, path.string() + ": " + e.what());
  }
}

CosmologyReport cosmology_consistency(const Quantity& lambda) {
  lambda.require(dim::rate, "lambda");
  require_positive(lambda, "lambda");
  const double ratio = lambda.si() / kHubbleRate;
  return {ratio, ratio >= 0.1 && ratio <= 100.0};
}

}  // namespace csl
