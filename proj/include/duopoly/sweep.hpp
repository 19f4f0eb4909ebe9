#ifndef DUOPOLY_SWEEP_HPP
#define DUOPOLY_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "duopoly/exact.hpp"
#include "duopoly/games.hpp"
#include "duopoly/rational.hpp"

namespace duopoly {

// Arithmetic grid start, start+step, ..., start+(count-1)*step, kept in
// rationals so grid points can be adjudicated exactly.
struct GridSpec {
  Rational start;
  Rational step;
  int count = 1;

  std::vector<Rational> values() const;

  // "0.1:0.1:3.0" (start:step:end, inclusive) or a single value "0.4".
  static GridSpec parse(const std::string& text);
};

enum class SweepObjectives { Throughput, Revenue, Both };

// A fixed-loyalty region sweep. The swept ratio is the one that drives the
// equilibrium structure of the chosen regime: rho for mixed markets, rho_w
// for supply-limited, rho_c for demand-limited. Each (ratio, f) pair is
// realized as a linear market with rational parameters (demand intercept
// fixed by the regime recipe, supply solved to hit the ratio), so every
// grid point supports exact adjudication.
struct SweepSpec {
  Regime regime = Regime::Mixed;
  SweepObjectives objectives = SweepObjectives::Both;
  GridSpec ratio_grid;
  GridSpec f_grid{Rational(1, 5), Rational(0), 1};
  GridSpec beta_grid;
  Rational gamma{1, 2};
  Rational p_high{100};
  std::string output_path;
};

struct RegionRecord {
  double beta = 0.0;
  double rho = 0.0;
  double f = 0.0;
  double rho_w = 0.0;
  double rho_c = 0.0;
  std::string regime_label;
  Objective objective = Objective::Throughput;
  std::array<bool, 4> ne_enum{};
  std::array<bool, 4> ne_pred{};
  bool agree = false;
  // Bookkeeping outside the CSV schema.
  bool realizable = true;
  bool adjudicated = false;
  std::string note;
};

// Builds the linear market hitting the target ratio in the target regime,
// or nullopt when no market in that regime attains it (mixed markets need
// rho_c < rho < 1/f). All recipes post prices p_low = f * p_high.
std::optional<exact::LinearMarket> realize_market(Regime regime,
                                                  const Rational& ratio,
                                                  const Rational& f,
                                                  const Rational& gamma,
                                                  const Rational& p_high);

// MarketConfig with the same parameters rounded to double.
MarketConfig to_market_config(const exact::LinearMarket& mkt);

// One record per (ratio, f, beta, objective), in that nesting order with
// every grid ascending, so output is deterministic. Floating enumeration
// and prediction are compared at eps = 1e-9 * payoff scale; any mismatch
// is re-run through the exact-rational path and the record keeps the exact
// sets (marked adjudicated). Unrealizable grid points produce one error
// record and the sweep continues.
std::vector<RegionRecord> run_sweep(const SweepSpec& spec);

// Fixed-schema CSV:
// beta,rho,f,rho_w,rho_c,regime,objective,ne_LL_enum,...,ne_HH_pred,agree
// Numbers carry 12 significant digits; booleans are 0/1.
std::string to_csv(const std::vector<RegionRecord>& records);
void write_csv(const std::vector<RegionRecord>& records,
               const std::string& path);

}  // namespace duopoly

#endif  // DUOPOLY_SWEEP_HPP
