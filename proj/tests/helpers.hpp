#ifndef DUOPOLY_TESTS_HELPERS_HPP
#define DUOPOLY_TESTS_HELPERS_HPP

#include "duopoly/market.hpp"

namespace duopoly::testing {

// c(p) = 100 - p, w(p) = p, gamma = 1/2: p_bal = 200/3.
inline MarketConfig canonical_market(double p_low, double p_high) {
  return MarketConfig(Curve::linear(100.0, 1.0, Direction::Decreasing),
                      Curve::linear(0.0, 1.0, Direction::Increasing), 0.5,
                      p_low, p_high);
}

// Ladder {50, 90}: mixed regime, rho = c(90)/w(25) = 0.4.
inline MarketConfig mixed_market() { return canonical_market(50.0, 90.0); }

// Ladder {40, 60}: supply limited (60 < 200/3).
inline MarketConfig supply_limited_market() {
  return canonical_market(40.0, 60.0);
}

// Ladder {70, 90}: demand limited (70 > 200/3).
inline MarketConfig demand_limited_market() {
  return canonical_market(70.0, 90.0);
}

}  // namespace duopoly::testing

#endif  // DUOPOLY_TESTS_HELPERS_HPP
