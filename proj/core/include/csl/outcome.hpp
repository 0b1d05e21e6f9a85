#pragma once

#include <cstddef>
#include <optional>

#include "csl/quantum_state.hpp"

namespace csl {

/// Index of the basis state a trajectory collapsed onto; empty means undecided.
using Outcome = std::optional<std::size_t>;

inline constexpr double kDefaultCollapseEpsilon = 1e-3;

/// Returns i iff p_i >= 1 - epsilon. For epsilon < 0.5 at most one index can
/// qualify. Throws NotNormalized, or InvalidParameter for epsilon outside (0, 0.5).
Outcome classify_outcome(const StateVector& state, double epsilon);

}  // namespace csl
