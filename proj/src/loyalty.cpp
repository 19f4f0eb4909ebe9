#include "duopoly/loyalty.hpp"

#include <algorithm>
#include <sstream>

#include "duopoly/errors.hpp"

namespace duopoly {

LoyaltyModel LoyaltyModel::fixed(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw ConfigError("fixed loyalty needs beta strictly inside (0, 1)");
  return LoyaltyModel(Fixed{beta});
}

LoyaltyModel LoyaltyModel::price_sensitive(double t) {
  if (!(t > 0.0 && t < 0.5))
    throw ConfigError("price-sensitive loyalty needs t strictly inside "
                      "(0, 1/2); t = 0 is Fixed(1/2), the endpoint t = 1/2 "
                      "is winner-takes-all");
  return LoyaltyModel(PriceSensitive{t});
}

LoyaltyModel LoyaltyModel::winner_takes_all() {
  return LoyaltyModel(WinnerTakesAll{});
}

double LoyaltyModel::fixed_beta() const {
  if (const auto* f = std::get_if<Fixed>(&variant_)) return f->beta;
  throw DomainError("loyalty model has no fixed beta");
}

std::string LoyaltyModel::describe() const {
  std::ostringstream os;
  if (const auto* f = std::get_if<Fixed>(&variant_))
    os << "fixed(beta=" << f->beta << ")";
  else if (const auto* ps = std::get_if<PriceSensitive>(&variant_))
    os << "price_sensitive(t=" << ps->t << ")";
  else
    os << "winner_takes_all";
  return os.str();
}

double resolve_beta(const LoyaltyModel& model, double p1, double p2) {
  if (const auto* f = std::get_if<LoyaltyModel::Fixed>(&model.variant_))
    return f->beta;
  if (const auto* ps =
          std::get_if<LoyaltyModel::PriceSensitive>(&model.variant_)) {
    if (p1 == p2) return 0.5;
    return p1 < p2 ? 0.5 + ps->t : 0.5 - ps->t;
  }
  if (p1 == p2) return 0.5;
  return p1 < p2 ? 1.0 : 0.0;
}

Allocation degenerate_allocation(const MarketConfig& cfg, double p1,
                                 double p2, double beta) {
  if (beta != 0.0 && beta != 1.0)
    throw DomainError("degenerate allocation is defined for beta in {0, 1}");
  if (!cfg.on_ladder(p1) || !cfg.on_ladder(p2))
    throw DomainError("profile prices must come from {p_low, p_high}");
  if (p1 == p2)
    throw DomainError("degenerate allocation needs distinct prices; equal "
                      "prices split beta = 1/2 through the regular path");

  double g = cfg.gamma();
  double p_fav = beta == 1.0 ? p1 : p2;
  double served = std::min({eval_supply(cfg, g * p_fav),
                            eval_demand(cfg, p_fav),
                            eval_demand(cfg, std::min(p1, p2)),
                            eval_supply(cfg, g * std::max(p1, p2))});
  Allocation a;
  if (beta == 1.0) {
    a.c1 = a.w1 = served;
  } else {
    a.c2 = a.w2 = served;
  }
  return a;
}

}  // namespace duopoly
