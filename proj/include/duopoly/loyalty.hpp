#ifndef DUOPOLY_LOYALTY_HPP
#define DUOPOLY_LOYALTY_HPP

#include <string>
#include <variant>

#include "duopoly/allocation.hpp"
#include "duopoly/market.hpp"

namespace duopoly {

// How the customer split beta responds to the announced prices.
//
//   Fixed           beta is a constant in (0, 1)
//   PriceSensitive  1/2 on equal prices, 1/2 + t for the cheaper platform
//   WinnerTakesAll  1/2 on equal prices, all customers to the cheaper one
class LoyaltyModel {
 public:
  struct Fixed {
    double beta;
  };
  struct PriceSensitive {
    double t;  // in (0, 1/2)
  };
  struct WinnerTakesAll {};

  static LoyaltyModel fixed(double beta);
  static LoyaltyModel price_sensitive(double t);
  static LoyaltyModel winner_takes_all();

  bool is_fixed() const { return std::holds_alternative<Fixed>(variant_); }
  bool is_winner_takes_all() const {
    return std::holds_alternative<WinnerTakesAll>(variant_);
  }
  // Fixed beta, or throws for the other variants.
  double fixed_beta() const;

  std::string describe() const;

  friend double resolve_beta(const LoyaltyModel& model, double p1, double p2);

 private:
  explicit LoyaltyModel(std::variant<Fixed, PriceSensitive, WinnerTakesAll> v)
      : variant_(v) {}
  std::variant<Fixed, PriceSensitive, WinnerTakesAll> variant_;
};

// The customer fraction served at platform 1 under the given price profile.
double resolve_beta(const LoyaltyModel& model, double p1, double p2);

// Winner-take-all limit of the optimal allocation for beta in {0, 1}: the
// favored platform i receives
//   c_i = w_i = min{ w(g p_i), c(p_i), c(min p), w(max g p) }
// and the other receives nothing, matching the limit of the closed-form
// allocation as beta -> 1 for the favored side. Requires p1 != p2 (equal
// prices resolve to beta = 1/2 and take the regular path).
Allocation degenerate_allocation(const MarketConfig& cfg, double p1,
                                 double p2, double beta);

}  // namespace duopoly

#endif  // DUOPOLY_LOYALTY_HPP
