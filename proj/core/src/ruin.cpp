#include "csl/ruin.hpp"

#include <string>
#include <vector>

#include "csl/error.hpp"
#include "csl/rng.hpp"
#include "parallel.hpp"

namespace csl {

void RuinGame::validate() const {
  if (alice < 0 || bob < 0 || alice + bob < 1) {
    throw Error(ErrorCode::InvalidGame, "need a >= 0, b >= 0, a + b >= 1 (got a=" +
                                            std::to_string(alice) + ", b=" + std::to_string(bob) + ")");
  }
}

double ruin_probability_exact(const RuinGame& game) {
  game.validate();
  const auto total = static_cast<std::size_t>(game.alice + game.bob);
  if (total == 1) return static_cast<double>(game.alice);

  // Unknowns P(1..total-1); boundary P(0) = 0, P(total) = 1.
  // Row k: -P(k-1)/2 + P(k) - P(k+1)/2 = 0. Thomas algorithm.
  const std::size_t n = total - 1;
  std::vector<double> c_prime(n), d_prime(n);
  const double lower = -0.5, diag = 1.0, upper = -0.5;
  for (std::size_t k = 0; k < n; ++k) {
    const double rhs = (k + 1 == n) ? 0.5 : 0.0;  // moves P(total) = 1 across
    const double denom = k == 0 ? diag : diag - lower * c_prime[k - 1];
    c_prime[k] = upper / denom;
    d_prime[k] = (rhs - (k == 0 ? 0.0 : lower * d_prime[k - 1])) / denom;
  }
  std::vector<double> p(n);
  p[n - 1] = d_prime[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) p[k] = d_prime[k] - c_prime[k] * p[k + 1];

  if (game.alice == 0) return 0.0;
  if (game.bob == 0) return 1.0;
  return p[static_cast<std::size_t>(game.alice) - 1];
}

RuinStats ruin_simulate(const RuinGame& game, std::size_t n_games, std::uint64_t seed,
                        unsigned threads) {
  game.validate();
  if (n_games == 0) {
    throw Error(ErrorCode::InvalidParameter, "n_games must be >= 1");
  }
  const std::int64_t total = game.alice + game.bob;
  std::vector<std::uint8_t> won(n_games);
  std::vector<std::uint64_t> length(n_games);

  detail::parallel_for(n_games, threads, [&](std::size_t g) {
    RandomStream coin(seed, g);
    std::int64_t alice = game.alice;
    std::uint64_t flips = 0;
    std::uint32_t bits = 0;
    int left = 0;
    while (alice > 0 && alice < total) {
      if (left == 0) {
        bits = coin.bits32();
        left = 32;
      }
      alice += (bits & 1u) ? 1 : -1;
      bits >>= 1;
      --left;
      ++flips;
    }
    won[g] = alice == total;
    length[g] = flips;
  });

  RuinStats stats;
  stats.n_games = n_games;
  std::uint64_t total_flips = 0;
  for (std::size_t g = 0; g < n_games; ++g) {
    stats.alice_wins += won[g];
    total_flips += length[g];
  }
  stats.win_frequency = static_cast<double>(stats.alice_wins) / static_cast<double>(n_games);
  stats.mean_length = static_cast<double>(total_flips) / static_cast<double>(n_games);
  return stats;
}

}  // namespace csl
