#ifndef DUOPOLY_MARKET_HPP
#define DUOPOLY_MARKET_HPP

#include <optional>
#include <string>

#include "duopoly/curve.hpp"

namespace duopoly {

// Which side of the market binds at the price ladder, relative to the
// clearing price p_bal. Boundary equalities fold into the one-sided cases:
// p_high == p_bal is supply limited, p_low == p_bal is demand limited.
enum class Regime { SupplyLimited, DemandLimited, Mixed };

std::string to_string(Regime r);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;  // 0 means "default to 2 * p_high"
};

struct ClearingParams {
  double tol = 0.0;  // 0 means "default to 1e-9 * p_high"
  int max_iter = 200;
};

// The ratios that drive every equilibrium condition.
//
//   rho   = c(p_H) / w(g p_L)      rho_w = w(g p_L) / w(g p_H)
//   f     = p_L / p_H              rho_c = c(p_H) / c(p_L)
//
// revenue_ratio = rho_c / f = p_H c(p_H) / (p_L c(p_L)), the ratio of a
// single platform's revenue at the high price to that at the low price.
struct DerivedRatios {
  double p_bal;
  double rho;
  double f;
  double rho_w;
  double rho_c;
  double revenue_ratio;
};

// Finds the unique root of w(gamma * p) = c(p) on [lo, hi] by bisection.
// Requires a sign change of w(gamma p) - c(p) over the bracket; with a
// decreasing demand and increasing supply the difference is strictly
// increasing, so the root is unique. Stops when the bracket width drops
// below tol; throws ConfigError if the bracket has no sign change or the
// iteration cap is hit first.
double find_clearing_price(const Curve& demand, const Curve& supply,
                           double gamma, double lo, double hi,
                           double tol, int max_iter = 200);

// Immutable description of one two-platform market: the demand and supply
// curves, the platform commission share, and the binary price ladder.
// The clearing price and regime are computed once at construction.
class MarketConfig {
 public:
  MarketConfig(Curve demand, Curve supply, double gamma, double p_low,
               double p_high, Bracket bracket = {},
               ClearingParams clearing = {});

  const Curve& demand() const { return demand_; }
  const Curve& supply() const { return supply_; }
  double gamma() const { return gamma_; }
  double p_low() const { return p_low_; }
  double p_high() const { return p_high_; }
  double bracket_lo() const { return bracket_.lo; }
  double bracket_hi() const { return bracket_.hi; }
  double clearing_tol() const { return clearing_.tol; }

  double p_bal() const { return p_bal_; }
  Regime regime() const { return regime_; }

  // True iff p equals one of the two ladder prices.
  bool on_ladder(double p) const { return p == p_low_ || p == p_high_; }

 private:
  Curve demand_;
  Curve supply_;
  double gamma_;
  double p_low_;
  double p_high_;
  Bracket bracket_;
  ClearingParams clearing_;
  double p_bal_;
  Regime regime_;
};

// c(p) for p inside the demand working interval [bracket_lo, bracket_hi].
double eval_demand(const MarketConfig& cfg, double p);

// w(p) for p inside the supply working interval
// [gamma * bracket_lo, bracket_hi]. The argument is the worker share, so
// callers pass gamma * price.
double eval_supply(const MarketConfig& cfg, double p);

// Re-solves for p_bal at the given tolerance (the config caches the value
// at its own tolerance).
double clearing_price(const MarketConfig& cfg, double tol);

Regime classify_regime(const MarketConfig& cfg);

DerivedRatios derived_ratios(const MarketConfig& cfg);

}  // namespace duopoly

#endif  // DUOPOLY_MARKET_HPP
