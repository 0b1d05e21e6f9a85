#include "csl/outcome.hpp"

#include "csl/error.hpp"

namespace csl {

Outcome classify_outcome(const StateVector& state, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::InvalidParameter, "epsilon must lie in (0, 0.5)");
  }
  const std::vector<double> p = probabilities(state);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= 1.0 - epsilon) return i;
  }
  return std::nullopt;
}

}  // namespace csl
