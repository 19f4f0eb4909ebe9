#ifndef DUOPOLY_SELFTEST_HPP
#define DUOPOLY_SELFTEST_HPP

#include <random>
#include <string>
#include <vector>

#include "duopoly/games.hpp"
#include "duopoly/market.hpp"

namespace duopoly {

// A market drawn from random linear/exponential curves with a random
// commission and price ladder, resampled until all construction invariants
// hold and every ladder quantity is positive. Deterministic for a given
// generator state.
MarketConfig random_market(std::mt19937_64& rng);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  unsigned seed = 20240902;
  int random_configs = 60;      // markets for the randomized invariants
  int oracle_resolution = 120;  // grid oracle resolution
  int random_games = 1000;      // random bimatrix games for the NE lemma
};

// Runs the invariant suites of every module and returns one line per check.
std::vector<CheckResult> run_selftest(const SelftestOptions& options);

}  // namespace duopoly

#endif  // DUOPOLY_SELFTEST_HPP
