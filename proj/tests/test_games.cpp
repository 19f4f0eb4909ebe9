#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "duopoly/errors.hpp"
#include "duopoly/games.hpp"
#include "helpers.hpp"

using namespace duopoly;
using duopoly::testing::canonical_market;
using duopoly::testing::demand_limited_market;
using duopoly::testing::mixed_market;
using duopoly::testing::supply_limited_market;

namespace {

NESet ne_of(std::initializer_list<int> profiles) {
  NESet ne;
  for (int i : profiles) ne.member[i] = true;
  return ne;
}

}  // namespace

TEST_CASE("throughput payoffs match the four min-expressions") {
  MarketConfig cfg = mixed_market();
  PayoffMatrix m = throughput_payoffs(cfg, LoyaltyModel::fixed(0.5));
  // c(50) = 50, c(90) = 10, w(25) = 25, w(45) = 45, beta = 1/2.
  CHECK(m.pay1[kLL] == doctest::Approx(12.5));  // beta min{c(pL), w(gpL)}
  CHECK(m.pay1[kHH] == doctest::Approx(5.0));   // beta min{c(pH), w(gpH)}
  // Pinned with the grid oracle: both asymmetric profiles route 10 to
  // platform 1, matching the four-term min-expressions.
  CHECK(m.pay1[kLH] ==
        doctest::Approx(std::min({1.0 * 10.0, 0.5 * 50.0, 25.0,
                                  0.5 * 45.0})));
  CHECK(m.pay1[kHL] ==
        doctest::Approx(std::min({10.0, 0.5 * 50.0, 1.0 * 25.0,
                                  0.5 * 45.0})));
  CHECK(m.pay1[kLH] == doctest::Approx(10.0));
  CHECK(m.pay1[kHL] == doctest::Approx(10.0));
}

TEST_CASE("platform 2 throughput is the scaled platform 1 throughput") {
  MarketConfig cfg = mixed_market();
  for (double beta : {0.2, 0.5, 0.8}) {
    PayoffMatrix m = throughput_payoffs(cfg, LoyaltyModel::fixed(beta));
    for (int i = 0; i < 4; ++i)
      CHECK(m.pay2[i] ==
            doctest::Approx((1.0 - beta) / beta * m.pay1[i]).epsilon(1e-12));
  }
}

TEST_CASE("revenue payoffs are (1-gamma) p N") {
  MarketConfig cfg = supply_limited_market();
  double beta = 0.5;
  PayoffMatrix t = throughput_payoffs(cfg, LoyaltyModel::fixed(beta));
  PayoffMatrix r = revenue_payoffs(cfg, LoyaltyModel::fixed(beta));
  // Profile (H, H): pay1 = (1-gamma) p_H beta w(gamma p_H) = .5*60*.5*30.
  CHECK(r.pay1[kHH] == doctest::Approx(0.5 * 60.0 * 0.5 * 30.0));
  for (int i = 0; i < 4; ++i) {
    double p1 = kProfiles[i].s1 == Strategy::H ? 60.0 : 40.0;
    double p2 = kProfiles[i].s2 == Strategy::H ? 60.0 : 40.0;
    CHECK(r.pay1[i] == doctest::Approx(0.5 * p1 * t.pay1[i]));
    CHECK(r.pay2[i] == doctest::Approx(0.5 * p2 * t.pay2[i]));
  }
}

TEST_CASE("price-symmetric loyalty gives a price-symmetric game") {
  for (const LoyaltyModel& model : {LoyaltyModel::price_sensitive(0.2),
                                    LoyaltyModel::winner_takes_all()}) {
    for (const MarketConfig& cfg :
         {mixed_market(), supply_limited_market(), demand_limited_market()}) {
      PayoffMatrix m = throughput_payoffs(cfg, model);
      CHECK(m.pay1[kLH] == m.pay2[kHL]);
      CHECK(m.pay1[kHL] == m.pay2[kLH]);
      CHECK(m.pay1[kLL] == m.pay2[kLL]);
      CHECK(m.pay1[kHH] == m.pay2[kHH]);
    }
  }
}

TEST_CASE("pure equilibria by weak best response") {
  // Ties everywhere: all four profiles qualify.
  CHECK(pure_nash({1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}, 0.0) ==
        ne_of({kLL, kLH, kHL, kHH}));
  // Prisoner's-dilemma shape: the dominant profile only.
  CHECK(pure_nash({3.0, 0.0, 5.0, 1.0}, {3.0, 5.0, 0.0, 1.0}, 0.0) ==
        ne_of({kHH}));
  // The canonical mixed market at beta = 1/2: (L, L) only.
  MarketConfig cfg = mixed_market();
  PayoffMatrix m = throughput_payoffs(cfg, LoyaltyModel::fixed(0.5));
  CHECK(pure_nash(m, default_ne_eps(m)) == ne_of({kLL}));
  CHECK_THROWS_AS(pure_nash(m, -1.0), DomainError);
}

TEST_CASE("equilibria are invariant under positive payoff scaling") {
  MarketConfig cfg = mixed_market();
  for (double beta : {0.3, 0.5, 0.62}) {
    PayoffMatrix m = throughput_payoffs(cfg, LoyaltyModel::fixed(beta));
    NESet base = pure_nash(m, default_ne_eps(m));
    PayoffMatrix k = m;
    for (int i = 0; i < 4; ++i) {
      k.pay1[i] *= 250.0;
      k.pay2[i] *= 250.0;
    }
    CHECK(pure_nash(k, default_ne_eps(k)) == base);
  }
}

TEST_CASE("closed-form predictions per regime") {
  DerivedRatios mixed{};
  mixed.rho = 0.4;
  CHECK(predicted_ne(Objective::Throughput, Regime::Mixed, mixed, 0.5) ==
        ne_of({kLL}));

  DerivedRatios any{};
  any.rho = 0.7;
  any.f = 0.5;
  any.rho_w = 0.6;
  any.rho_c = 0.3;
  CHECK(predicted_ne(Objective::Revenue, Regime::SupplyLimited, any, 0.25) ==
        ne_of({kHH}));

  DerivedRatios supply{};
  supply.rho_w = 0.6;
  CHECK(predicted_ne(Objective::Throughput, Regime::SupplyLimited, supply,
                     0.5) == ne_of({kLH, kHL, kHH}));

  CHECK_THROWS_AS(predicted_ne(Objective::Throughput, Regime::Mixed, mixed,
                               0.0),
                  DomainError);
}

TEST_CASE("closed-form prediction requires fixed loyalty") {
  MarketConfig cfg = mixed_market();
  CHECK_THROWS_AS(
      predicted_ne(Objective::Throughput, cfg,
                   LoyaltyModel::winner_takes_all()),
      DomainError);
  CHECK_NOTHROW(
      predicted_ne(Objective::Throughput, cfg, LoyaltyModel::fixed(0.5)));
}

TEST_CASE("prediction matches enumeration across regimes and betas") {
  for (const MarketConfig& cfg :
       {mixed_market(), supply_limited_market(), demand_limited_market(),
        canonical_market(30.0, 75.0)}) {
    DerivedRatios ratios = derived_ratios(cfg);
    for (int b = 1; b <= 39; ++b) {
      double beta = b / 40.0;
      LoyaltyModel loyalty = LoyaltyModel::fixed(beta);
      for (Objective obj : {Objective::Throughput, Objective::Revenue}) {
        PayoffMatrix m = obj == Objective::Throughput
                             ? throughput_payoffs(cfg, loyalty)
                             : revenue_payoffs(cfg, loyalty);
        NESet enumerated = pure_nash(m, default_ne_eps(m));
        NESet predicted = predicted_ne(obj, cfg.regime(), ratios, beta);
        INFO("regime=", to_string(cfg.regime()), " obj=", to_string(obj),
             " beta=", beta);
        CHECK(enumerated == predicted);
      }
    }
  }
}

TEST_CASE("equilibria always exist, under every loyalty model") {
  for (const MarketConfig& cfg :
       {mixed_market(), supply_limited_market(), demand_limited_market()}) {
    std::vector<LoyaltyModel> models = {LoyaltyModel::price_sensitive(0.05),
                                        LoyaltyModel::price_sensitive(0.2),
                                        LoyaltyModel::price_sensitive(0.45),
                                        LoyaltyModel::winner_takes_all()};
    for (int b = 1; b <= 99; ++b) models.push_back(LoyaltyModel::fixed(b / 100.0));
    for (const LoyaltyModel& model : models) {
      PayoffMatrix tm = throughput_payoffs(cfg, model);
      PayoffMatrix rm = revenue_payoffs(cfg, model);
      CHECK_FALSE(pure_nash(tm, default_ne_eps(tm)).empty());
      CHECK_FALSE(pure_nash(rm, default_ne_eps(rm)).empty());
    }
  }
}

TEST_CASE("cross-objective implications") {
  MarketConfig supply = supply_limited_market();
  LoyaltyModel fixed = LoyaltyModel::fixed(0.5);
  CrossObjectiveReport r1 = check_cross_objective_implications(
      throughput_payoffs(supply, fixed), revenue_payoffs(supply, fixed), 0.0);
  CHECK(r1.ok());

  // Demand-limited market where (L, L) is a revenue equilibrium.
  MarketConfig demand = demand_limited_market();
  PayoffMatrix rm = revenue_payoffs(demand, fixed);
  NESet rne = pure_nash(rm, default_ne_eps(rm));
  CHECK(rne.contains(kLL));  // rho_c / beta = 2/3 <= f = 7/9 on both bounds
  CrossObjectiveReport r2 = check_cross_objective_implications(
      throughput_payoffs(demand, fixed), rm, 0.0);
  CHECK(r2.ok());

  // Mismatched inputs are rejected.
  CHECK_THROWS_AS(check_cross_objective_implications(
                      throughput_payoffs(supply, fixed),
                      revenue_payoffs(demand, fixed), 0.0),
                  DomainError);
  CHECK_THROWS_AS(check_cross_objective_implications(
                      revenue_payoffs(supply, fixed),
                      revenue_payoffs(supply, fixed), 0.0),
                  DomainError);
}

TEST_CASE("cross-objective implications on random games hold everywhere") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> betas(0.05, 0.95);
  for (const MarketConfig& cfg :
       {mixed_market(), supply_limited_market(), demand_limited_market(),
        canonical_market(35.0, 80.0), canonical_market(68.0, 130.0)}) {
    for (int i = 0; i < 40; ++i) {
      LoyaltyModel model = LoyaltyModel::fixed(betas(rng));
      CHECK(check_cross_objective_implications(
                throughput_payoffs(cfg, model), revenue_payoffs(cfg, model),
                0.0)
                .ok());
    }
  }
}

TEST_CASE("abstract existence lemma game") {
  // Equal stakes: every profile but (S1, S1).
  CHECK(verify_existence_lemmas(5.0, 5.0, 0.3) == ne_of({kLH, kHL, kHH}));
  // a1/a2 = 0.3 at beta = 1/2: only (S2, S2).
  CHECK(verify_existence_lemmas(1.5, 5.0, 0.5) == ne_of({kHH}));
  // beta = 0.8 >= 1 - 0.3: (S2, S1) joins.
  CHECK(verify_existence_lemmas(1.5, 5.0, 0.8) == ne_of({kHL, kHH}));

  CHECK_THROWS_AS(verify_existence_lemmas(5.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(verify_existence_lemmas(0.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(verify_existence_lemmas(1.0, 2.0, 1.0), DomainError);
}

TEST_CASE("supply-limited throughput game is the lemma game in disguise") {
  MarketConfig cfg = supply_limited_market();
  double a1 = eval_supply(cfg, 20.0);  // w(gamma p_L)
  double a2 = eval_supply(cfg, 30.0);  // w(gamma p_H)
  for (double beta : {0.3, 0.5, 0.71}) {
    PayoffMatrix m = throughput_payoffs(cfg, LoyaltyModel::fixed(beta));
    double odds = beta / (1.0 - beta);
    CHECK(m.pay1[kLL] == doctest::Approx(beta * a1));
    CHECK(m.pay1[kLH] == doctest::Approx(std::min(a1, beta * a2)));
    CHECK(m.pay1[kHL] == doctest::Approx(std::min(odds * a1, beta * a2)));
    CHECK(m.pay1[kHH] == doctest::Approx(beta * a2));
    CHECK(pure_nash(m, default_ne_eps(m)) ==
          verify_existence_lemmas(a1, a2, beta));
  }
}

TEST_CASE("strict best-response cycles are the only obstruction to pure "
          "equilibria") {
  // Matching pennies cycles and has no pure equilibrium.
  std::array<double, 4> mp1 = {1.0, -1.0, -1.0, 1.0};
  std::array<double, 4> mp2 = {-1.0, 1.0, 1.0, -1.0};
  CHECK(has_strict_best_response_cycle(mp1, mp2));
  CHECK(pure_nash(mp1, mp2, 0.0).empty());
  // The prisoner's dilemma does not cycle.
  CHECK_FALSE(has_strict_best_response_cycle({3.0, 0.0, 5.0, 1.0},
                                             {3.0, 5.0, 0.0, 1.0}));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pay(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    std::array<double, 4> p1, p2;
    for (int k = 0; k < 4; ++k) {
      p1[k] = pay(rng);
      p2[k] = pay(rng);
    }
    if (!has_strict_best_response_cycle(p1, p2))
      CHECK_FALSE(pure_nash(p1, p2, 0.0).empty());
  }
}
