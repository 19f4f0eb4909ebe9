#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "duopoly/errors.hpp"
#include "duopoly/exact.hpp"
#include "duopoly/sweep.hpp"

using namespace duopoly;

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("0.05") == Rational(1, 20));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("7/20") == Rational(7, 20));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1.2.3"));

  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(a > b);
  CHECK(b < a);
  CHECK(a >= Rational(1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));  // normalization
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  Rational huge(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(huge * huge, std::overflow_error);
}

TEST_CASE("exact clearing price and regime") {
  exact::LinearMarket m;
  m.dem_intercept = Rational(100);
  m.dem_slope = Rational(1);
  m.sup_intercept = Rational(0);
  m.sup_slope = Rational(1);
  m.gamma = Rational(1, 2);
  m.p_low = Rational(50);
  m.p_high = Rational(90);
  CHECK(exact::clearing_price(m) == Rational(200, 3));
  CHECK(exact::regime(m) == Regime::Mixed);

  m.p_low = Rational(40);
  m.p_high = Rational(60);
  CHECK(exact::regime(m) == Regime::SupplyLimited);
  m.p_low = Rational(70);
  m.p_high = Rational(90);
  CHECK(exact::regime(m) == Regime::DemandLimited);
}

TEST_CASE("exact payoffs mirror the floating pipeline") {
  exact::LinearMarket m;
  m.dem_intercept = Rational(100);
  m.dem_slope = Rational(1);
  m.sup_intercept = Rational(0);
  m.sup_slope = Rational(1);
  m.gamma = Rational(1, 2);
  m.p_low = Rational(50);
  m.p_high = Rational(90);

  std::array<Rational, 4> betas = {Rational(1, 2), Rational(1, 2),
                                   Rational(1, 2), Rational(1, 2)};
  std::array<Rational, 4> pay1, pay2;
  exact::payoff_matrices(m, betas, Objective::Throughput, pay1, pay2);
  CHECK(pay1[kLL] == Rational(25, 2));
  CHECK(pay1[kLH] == Rational(10));
  CHECK(pay1[kHL] == Rational(10));
  CHECK(pay1[kHH] == Rational(5));
  for (int i = 0; i < 4; ++i) CHECK(pay2[i] == pay1[i]);

  exact::payoff_matrices(m, betas, Objective::Revenue, pay1, pay2);
  CHECK(pay1[kLL] == Rational(1, 2) * Rational(50) * Rational(25, 2));
  CHECK(pay1[kHH] == Rational(1, 2) * Rational(90) * Rational(5));
}

TEST_CASE("exact enumeration and prediction agree on boundary betas") {
  exact::LinearMarket m;
  m.dem_intercept = Rational(100);
  m.dem_slope = Rational(1);
  m.sup_intercept = Rational(0);
  m.sup_slope = Rational(1);
  m.gamma = Rational(1, 2);
  m.p_low = Rational(50);
  m.p_high = Rational(90);
  // rho = 2/5 exactly; the interesting betas sit on {rho, 1-rho}.
  for (Rational beta : {Rational(2, 5), Rational(3, 5), Rational(1, 2),
                        Rational(1, 100), Rational(99, 100)}) {
    for (Objective obj : {Objective::Throughput, Objective::Revenue}) {
      exact::Adjudication adj = exact::adjudicate_fixed(m, beta, obj);
      CHECK(adj.agreed());
    }
  }
  // At beta = rho the (L, L) deviation ties and the weak test keeps it.
  exact::Adjudication at_rho =
      exact::adjudicate_fixed(m, Rational(2, 5), Objective::Throughput);
  CHECK(at_rho.enumerated.contains(kLL));
  // At beta = 1 - rho, (L, H) ties into the set as well.
  exact::Adjudication at_corho =
      exact::adjudicate_fixed(m, Rational(3, 5), Objective::Throughput);
  CHECK(at_corho.enumerated.contains(kLL));
  CHECK(at_corho.enumerated.contains(kLH));
}

TEST_CASE("market realization hits the requested ratios exactly") {
  Rational gamma(1, 2), p_high(100);

  auto mixed = realize_market(Regime::Mixed, Rational(3, 10), Rational(1, 5),
                              gamma, p_high);
  REQUIRE(mixed.has_value());
  auto lm = exact::ladder(*mixed);
  CHECK(lm.c_ph / lm.w_gpl == Rational(3, 10));
  CHECK(exact::regime(*mixed) == Regime::Mixed);
  CHECK(to_market_config(*mixed).regime() == Regime::Mixed);

  auto supply = realize_market(Regime::SupplyLimited, Rational(7, 10),
                               Rational(2, 5), gamma, p_high);
  REQUIRE(supply.has_value());
  auto ls = exact::ladder(*supply);
  CHECK(ls.w_gpl / ls.w_gph == Rational(7, 10));
  CHECK(exact::regime(*supply) == Regime::SupplyLimited);
  CHECK(to_market_config(*supply).regime() == Regime::SupplyLimited);

  auto demand = realize_market(Regime::DemandLimited, Rational(1, 4),
                               Rational(3, 5), gamma, p_high);
  REQUIRE(demand.has_value());
  auto ld = exact::ladder(*demand);
  CHECK(ld.c_ph / ld.c_pl == Rational(1, 4));
  CHECK(exact::regime(*demand) == Regime::DemandLimited);
  CHECK(to_market_config(*demand).regime() == Regime::DemandLimited);
}

TEST_CASE("unrealizable targets are reported, not forced") {
  Rational gamma(1, 2), p_high(100);
  // A mixed market cannot have rho >= 1/f.
  CHECK_FALSE(realize_market(Regime::Mixed, Rational(6), Rational(1, 5),
                             gamma, p_high)
                  .has_value());
  CHECK_FALSE(realize_market(Regime::SupplyLimited, Rational(1),
                             Rational(1, 5), gamma, p_high)
                  .has_value());
  CHECK_FALSE(realize_market(Regime::DemandLimited, Rational(0),
                             Rational(1, 5), gamma, p_high)
                  .has_value());
}
