#include "duopoly/market.hpp"

#include <cmath>
#include <utility>

#include "duopoly/errors.hpp"

namespace duopoly {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::SupplyLimited: return "supply_limited";
    case Regime::DemandLimited: return "demand_limited";
    case Regime::Mixed: return "mixed";
  }
  return "?";
}

double find_clearing_price(const Curve& demand, const Curve& supply,
                           double gamma, double lo, double hi, double tol,
                           int max_iter) {
  if (!(lo < hi)) throw ConfigError("clearing bracket is empty");
  if (!(tol > 0.0)) throw ConfigError("clearing tolerance must be positive");
  auto g = [&](double p) { return supply.eval(gamma * p) - demand.eval(p); };
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo < 0.0) == (ghi < 0.0))
    throw ConfigError(
        "no market clearing price: w(gamma p) - c(p) has no sign change on "
        "the bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
        "]");
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo < tol) return mid;
    double gmid = g(mid);
    if (gmid == 0.0) return mid;
    if ((gmid < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
    }
  }
  throw ConfigError("clearing price bisection did not converge within " +
                    std::to_string(max_iter) + " iterations");
}

MarketConfig::MarketConfig(Curve demand, Curve supply, double gamma,
                           double p_low, double p_high, Bracket bracket,
                           ClearingParams clearing)
    : demand_(std::move(demand)),
      supply_(std::move(supply)),
      gamma_(gamma),
      p_low_(p_low),
      p_high_(p_high),
      bracket_(bracket),
      clearing_(clearing),
      p_bal_(0.0),
      regime_(Regime::Mixed) {
  if (!(0.0 < p_low_ && p_low_ < p_high_))
    throw ConfigError("price ladder must satisfy 0 < p_low < p_high");
  if (!(0.0 < gamma_ && gamma_ < 1.0))
    throw ConfigError("gamma must lie strictly inside (0, 1)");
  if (demand_.direction() != Direction::Decreasing)
    throw ConfigError("demand curve must be decreasing");
  if (supply_.direction() != Direction::Increasing)
    throw ConfigError("supply curve must be increasing");

  if (bracket_.hi == 0.0 && bracket_.lo == 0.0) bracket_.hi = 2.0 * p_high_;
  if (!(bracket_.lo < bracket_.hi))
    throw ConfigError("clearing bracket is empty");
  if (!(bracket_.lo <= p_low_ && p_high_ <= bracket_.hi))
    throw ConfigError("price ladder must lie inside the clearing bracket");
  if (clearing_.tol == 0.0) clearing_.tol = 1e-9 * p_high_;

  // Monotonicity must hold wherever the bisection evaluates the curves;
  // nonnegativity is required where evaluations are consumed as
  // quantities, i.e. at and between the ladder prices.
  demand_.validate(bracket_.lo, bracket_.hi);
  supply_.validate(gamma_ * bracket_.lo, bracket_.hi);
  demand_.validate_nonnegative(p_low_, p_high_);
  supply_.validate_nonnegative(gamma_ * p_low_, gamma_ * p_high_);

  p_bal_ = find_clearing_price(demand_, supply_, gamma_, bracket_.lo,
                               bracket_.hi, clearing_.tol, clearing_.max_iter);
  if (p_high_ <= p_bal_)
    regime_ = Regime::SupplyLimited;
  else if (p_low_ >= p_bal_)
    regime_ = Regime::DemandLimited;
  else
    regime_ = Regime::Mixed;
}

double eval_demand(const MarketConfig& cfg, double p) {
  if (p < cfg.bracket_lo() || p > cfg.bracket_hi())
    throw DomainError("demand price " + std::to_string(p) +
                      " outside working interval");
  return cfg.demand().eval(p);
}

double eval_supply(const MarketConfig& cfg, double p) {
  if (p < cfg.gamma() * cfg.bracket_lo() || p > cfg.bracket_hi())
    throw DomainError("supply price " + std::to_string(p) +
                      " outside working interval");
  return cfg.supply().eval(p);
}

double clearing_price(const MarketConfig& cfg, double tol) {
  return find_clearing_price(cfg.demand(), cfg.supply(), cfg.gamma(),
                             cfg.bracket_lo(), cfg.bracket_hi(), tol);
}

Regime classify_regime(const MarketConfig& cfg) { return cfg.regime(); }

DerivedRatios derived_ratios(const MarketConfig& cfg) {
  double g = cfg.gamma();
  double c_pl = eval_demand(cfg, cfg.p_low());
  double c_ph = eval_demand(cfg, cfg.p_high());
  double w_gpl = eval_supply(cfg, g * cfg.p_low());
  double w_gph = eval_supply(cfg, g * cfg.p_high());
  if (!(w_gpl > 0.0))
    throw ConfigError("w(gamma p_low) must be positive to form rho");
  if (!(c_pl > 0.0))
    throw ConfigError("c(p_low) must be positive to form rho_c");
  if (!(c_ph > 0.0))
    throw ConfigError("c(p_high) must be positive: every equilibrium ratio "
                      "degenerates when the high price clears the market");

  DerivedRatios r;
  r.p_bal = cfg.p_bal();
  r.rho = c_ph / w_gpl;
  r.f = cfg.p_low() / cfg.p_high();
  r.rho_w = w_gpl / w_gph;
  r.rho_c = c_ph / c_pl;
  r.revenue_ratio = r.rho_c / r.f;

  // Range claims implied by strict monotonicity; violations mean the curves
  // broke an assumption between the ladder prices.
  if (!(r.f > 0.0 && r.f < 1.0 && r.rho_w > 0.0 && r.rho_w < 1.0 &&
        r.rho_c > 0.0 && r.rho_c < 1.0 && r.rho > 0.0))
    throw ConfigError("derived ratios violate 0 < f, rho_w, rho_c < 1 < "
                      "... , rho > 0");
  return r;
}

}  // namespace duopoly
