#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "csl/units.hpp"

namespace csl {

/// Reference collapse rate, s^-1, with r_C = 1e-5 cm.
inline constexpr double kConventionalLambda = 1e-17;
/// Ratio between the latent-image ("enhanced") and conventional rates.
inline constexpr double kEnhancementFactor = 1e8;
inline constexpr double kHubbleRate = 2e-18;  // s^-1
inline constexpr double kDefaultCorrelationLengthCm = 1e-5;
/// Flight time through a diffraction apparatus used for every diffraction
/// bound. Calibrated, not measured: it places the 720 Da bound 13 orders above
/// the conventional rate.
inline constexpr double kDiffractionCoherenceTime = 10e-3;  // s

/// Rigid pointer whose centre of mass must be localized within t_required.
struct PointerSpec {
  double total_nucleons = 0.0;     // N
  double nucleons_per_cell = 0.0;  // n, nucleons in one r_C^3 cell
  Quantity settle_time;            // time

  void validate() const;
};

/// 1e15-nucleon pointer, 1e9 nucleons per (1e-5 cm)^3 cell of ordinary
/// solid, to be resolved within 1e-7 s.
PointerSpec reference_pointer();

/// Effective deltaM^2 = n * N for a rigid body displaced by more than r_C.
double amplification_factor(const PointerSpec& spec);

/// Smallest rate that resolves the pointer in time: 1 / (n N t).
Quantity lambda_lower_bound_pointer(const PointerSpec& spec);

Quantity enhanced_lambda(const Quantity& base);

/// 1 / (N^2 t) with N the molecular mass in daltons, valid while the
/// molecule is smaller than r_C.
Quantity diffraction_lambda_bound(const Quantity& mass, const Quantity& coherence_time);

/// Mass at which diffraction_lambda_bound reaches lambda_target.
Quantity mass_to_confront(const Quantity& lambda_target, const Quantity& coherence_time);

/// Mean energy gain per particle, 3 lambda hbar^2 / (4 m r_C^2).
Quantity heating_rate_per_particle(const Quantity& lambda, const Quantity& mass,
                                   const Quantity& r_c);

enum class BoundKind { Laboratory, Cosmological };

std::string_view to_string(BoundKind kind);
BoundKind bound_kind_from_string(std::string_view s);

struct ExperimentBound {
  std::string name;
  BoundKind kind = BoundKind::Laboratory;
  int orders_above_conventional = 0;

  /// 10^(-17 + orders_above_conventional) s^-1.
  Quantity lambda_max() const;
  int orders_above_enhanced() const noexcept { return orders_above_conventional - 8; }
  bool excludes(const Quantity& lambda) const;

  friend bool operator==(const ExperimentBound&, const ExperimentBound&) = default;
};

/// The eight upper bounds on lambda, laboratory rows first.
std::vector<ExperimentBound> bounds_table();

inline constexpr int kBoundsSchemaVersion = 1;

/// Default location of the shipped reference table.
std::filesystem::path default_bounds_path();

/// Reads a bounds table written in the lambda_bounds.json schema. Throws
/// InvalidData on schema violations.
std::vector<ExperimentBound> load_bounds_table(const std::filesystem::path& path);

struct CosmologyReport {
  double ratio = 0.0;  // lambda / H0
  bool compatible = false;
};

/// Compatible when lambda / H0 lies in [0.1, 100].
CosmologyReport cosmology_consistency(const Quantity& lambda);

}  // namespace csl
