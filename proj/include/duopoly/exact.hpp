#ifndef DUOPOLY_EXACT_HPP
#define DUOPOLY_EXACT_HPP

#include <array>

#include "duopoly/detail/game_formulas.hpp"
#include "duopoly/games.hpp"
#include "duopoly/rational.hpp"

namespace duopoly::exact {

// Exact-rational mirror of the game pipeline for markets with linear curves
// and rational parameters. Floating-point enumeration and prediction can
// disagree only within rounding distance of a weak-inequality boundary;
// re-running the disputed point here settles it, since every payoff and
// every theorem condition is an exact rational.

// c(p) = dem_intercept - dem_slope * p
// w(p) = sup_intercept + sup_slope * p
struct LinearMarket {
  Rational dem_intercept;
  Rational dem_slope;
  Rational sup_intercept;
  Rational sup_slope;
  Rational gamma;
  Rational p_low;
  Rational p_high;
};

// Root of w(gamma p) = c(p); unique because the difference is strictly
// increasing in p.
Rational clearing_price(const LinearMarket& mkt);

Regime regime(const LinearMarket& mkt);

// Quantities at the ladder prices; throws ConfigError if any of them fails
// to be strictly positive.
detail::Ladder<Rational> ladder(const LinearMarket& mkt);

// Exact payoff matrices. betas holds the customer split per profile in
// LL, LH, HL, HH order (a constant array for fixed loyalty).
void payoff_matrices(const LinearMarket& mkt,
                     const std::array<Rational, 4>& betas, Objective objective,
                     std::array<Rational, 4>& pay1,
                     std::array<Rational, 4>& pay2);

// Weak best-response enumeration at tolerance zero.
NESet enumerate_ne(const LinearMarket& mkt,
                   const std::array<Rational, 4>& betas, Objective objective);

// Closed-form prediction for a fixed split.
NESet predict_ne(const LinearMarket& mkt, const Rational& beta,
                 Objective objective);

// Enumerated and predicted equilibria of one fixed-loyalty game, computed
// exactly. agreed() tells whether the two routes coincide.
struct Adjudication {
  NESet enumerated;
  NESet predicted;
  bool agreed() const { return enumerated == predicted; }
};

Adjudication adjudicate_fixed(const LinearMarket& mkt, const Rational& beta,
                              Objective objective);

}  // namespace duopoly::exact

#endif  // DUOPOLY_EXACT_HPP
