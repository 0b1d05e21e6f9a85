#pragma once

#include <cstddef>
#include <cstdint>

namespace csl {

/// Fair-coin game: each flip moves one penny between Alice and Bob until one
/// of them holds all a + b.
struct RuinGame {
  std::int64_t alice = 0;
  std::int64_t bob = 0;

  /// Throws InvalidGame unless a >= 0, b >= 0, a + b >= 1.
  void validate() const;
};

/// Probability that Alice ends with every penny, from a tridiagonal solve of
/// the absorbing chain's harmonic equations P(k) = (P(k-1) + P(k+1)) / 2.
double ruin_probability_exact(const RuinGame& game);

struct RuinStats {
  std::size_t n_games = 0;
  std::size_t alice_wins = 0;
  double win_frequency = 0.0;
  double mean_length = 0.0;  // flips per game
};

/// Plays n_games; game g uses stream g of `seed`.
RuinStats ruin_simulate(const RuinGame& game, std::size_t n_games, std::uint64_t seed,
                        unsigned threads = 1);

}  // namespace csl
