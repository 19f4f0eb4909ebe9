#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "duopoly/errors.hpp"
#include "duopoly/market.hpp"
#include "helpers.hpp"

using namespace duopoly;
using duopoly::testing::canonical_market;

TEST_CASE("demand evaluation on the declared families") {
  MarketConfig cfg = canonical_market(60.0, 100.0);
  CHECK(eval_demand(cfg, 60.0) == doctest::Approx(40.0));
  CHECK(eval_demand(cfg, 100.0) == doctest::Approx(0.0));

  MarketConfig tab(
      Curve::table({{0.0, 100.0}, {100.0, 0.0}}, Direction::Decreasing),
      Curve::table({{0.0, 0.0}, {100.0, 100.0}}, Direction::Increasing), 0.5,
      20.0, 80.0, Bracket{0.0, 100.0});
  CHECK(eval_demand(tab, 25.0) == doctest::Approx(75.0));
}

TEST_CASE("supply evaluation on the declared families") {
  MarketConfig cfg = canonical_market(20.0, 80.0);
  CHECK(eval_supply(cfg, 30.0) == doctest::Approx(30.0));

  MarketConfig doubled(Curve::linear(100.0, 1.0, Direction::Decreasing),
                       Curve::linear(0.0, 2.0, Direction::Increasing), 0.5,
                       20.0, 60.0);
  CHECK(eval_supply(doubled, 0.0) == doctest::Approx(0.0));

  MarketConfig exp(Curve::linear(100.0, 1.0, Direction::Decreasing),
                   Curve::exponential(10.0, 0.01, Direction::Increasing), 0.5,
                   20.0, 60.0);
  CHECK(eval_supply(exp, 0.0) == doctest::Approx(10.0));
}

TEST_CASE("evaluation outside the working interval is rejected") {
  MarketConfig cfg = canonical_market(50.0, 90.0);  // bracket [0, 180]
  CHECK_THROWS_AS(eval_demand(cfg, -1.0), DomainError);
  CHECK_THROWS_AS(eval_demand(cfg, 181.0), DomainError);
  CHECK_THROWS_AS(eval_supply(cfg, 200.0), DomainError);
}

TEST_CASE("clearing price by bisection") {
  MarketConfig cfg = canonical_market(50.0, 90.0);
  CHECK(cfg.p_bal() == doctest::Approx(200.0 / 3.0).epsilon(1e-9));

  // Steep supply, commission passed through whole: 100 p = 100 - p.
  double p = find_clearing_price(
      Curve::linear(100.0, 1.0, Direction::Decreasing),
      Curve::linear(0.0, 100.0, Direction::Increasing), 1.0, 0.0, 10.0, 1e-12);
  CHECK(p == doctest::Approx(100.0 / 101.0).epsilon(1e-9));
}

TEST_CASE("table curves sampled from the linear case clear at the same "
          "price") {
  std::vector<std::pair<double, double>> dk, sk;
  for (int i = 0; i <= 20; ++i) {
    double p = 180.0 * i / 20.0;
    dk.emplace_back(p, 100.0 - p);
    sk.emplace_back(p, p);
  }
  MarketConfig tab(Curve::table(dk, Direction::Decreasing),
                   Curve::table(sk, Direction::Increasing), 0.5, 50.0, 90.0);
  CHECK(std::abs(tab.p_bal() - 200.0 / 3.0) <= tab.clearing_tol());
}

TEST_CASE("missing sign change violates the clearing assumption") {
  // Supply sits above demand everywhere on the bracket.
  CHECK_THROWS_AS(MarketConfig(Curve::linear(50.0, 1.0, Direction::Decreasing),
                               Curve::linear(60.0, 1.0, Direction::Increasing),
                               0.5, 10.0, 20.0),
                  ConfigError);
}

TEST_CASE("regime classification") {
  CHECK(canonical_market(50.0, 90.0).regime() == Regime::Mixed);
  CHECK(canonical_market(40.0, 60.0).regime() == Regime::SupplyLimited);
  CHECK(canonical_market(70.0, 90.0).regime() == Regime::DemandLimited);

  // Boundary equalities fold into the one-sided regimes. With w(p) = 3p the
  // clearing price is exactly 40 and bisection lands on it.
  MarketConfig at_high(Curve::linear(100.0, 1.0, Direction::Decreasing),
                       Curve::linear(0.0, 3.0, Direction::Increasing), 0.5,
                       20.0, 40.0);
  CHECK(at_high.p_bal() == 40.0);
  CHECK(at_high.regime() == Regime::SupplyLimited);

  MarketConfig at_low(Curve::linear(100.0, 1.0, Direction::Decreasing),
                      Curve::linear(0.0, 3.0, Direction::Increasing), 0.5,
                      40.0, 60.0);
  CHECK(at_low.regime() == Regime::DemandLimited);
}

TEST_CASE("derived ratios") {
  MarketConfig cfg = canonical_market(50.0, 90.0);
  DerivedRatios r = derived_ratios(cfg);
  CHECK(r.rho == doctest::Approx(0.4));
  CHECK(r.f == doctest::Approx(50.0 / 90.0));
  CHECK(r.rho_w == doctest::Approx(25.0 / 45.0));
  CHECK(r.rho_c == doctest::Approx(0.2));
  CHECK(r.revenue_ratio == doctest::Approx(0.2 * 90.0 / 50.0));

  // Algebraic identities tying the ratios together.
  CHECK(r.rho ==
        doctest::Approx(r.rho_c * eval_demand(cfg, 50.0) /
                        eval_supply(cfg, 25.0)).epsilon(1e-9));
  CHECK(r.rho * r.rho_w ==
        doctest::Approx(eval_demand(cfg, 90.0) / eval_supply(cfg, 45.0))
            .epsilon(1e-9));
}

TEST_CASE("derived ratios reject a vanishing quantity") {
  // c(p_high) = 0 collapses rho and rho_c.
  MarketConfig cfg = canonical_market(50.0, 100.0);
  CHECK_THROWS_AS(derived_ratios(cfg), ConfigError);
}

TEST_CASE("construction rejects bad ladders and commissions") {
  auto make = [](double gamma, double lo, double hi) {
    return MarketConfig(Curve::linear(100.0, 1.0, Direction::Decreasing),
                        Curve::linear(0.0, 1.0, Direction::Increasing), gamma,
                        lo, hi);
  };
  CHECK_THROWS_AS(make(0.5, 60.0, 60.0), ConfigError);  // p_low == p_high
  CHECK_THROWS_AS(make(0.5, 60.0, 50.0), ConfigError);
  CHECK_THROWS_AS(make(0.5, -10.0, 50.0), ConfigError);
  CHECK_THROWS_AS(make(0.0, 40.0, 60.0), ConfigError);
  CHECK_THROWS_AS(make(1.0, 40.0, 60.0), ConfigError);  // gamma < 1 strict
  CHECK_THROWS_AS(make(1.5, 40.0, 60.0), ConfigError);
}

TEST_CASE("construction rejects curves that break monotonicity or go "
          "negative between the ladder prices") {
  CHECK_THROWS_AS(Curve::table({{0.0, 10.0}, {50.0, 10.0}, {100.0, 0.0}},
                               Direction::Decreasing),
                  ConfigError);
  CHECK_THROWS_AS(Curve::linear(100.0, 0.0, Direction::Decreasing),
                  ConfigError);
  CHECK_THROWS_AS(Curve::exponential(-2.0, 0.1, Direction::Increasing),
                  ConfigError);
  // c(120) = -20 sits between the ladder prices.
  CHECK_THROWS_AS(canonical_market(50.0, 120.0), ConfigError);
  // A table that cannot cover the clearing bracket is unusable.
  CHECK_THROWS_AS(
      MarketConfig(Curve::table({{40.0, 60.0}, {100.0, 0.0}},
                                Direction::Decreasing),
                   Curve::linear(0.0, 1.0, Direction::Increasing), 0.5, 50.0,
                   90.0),
      ConfigError);
}

TEST_CASE("monotonicity holds between any two interval points") {
  MarketConfig cfg(Curve::exponential(120.0, 0.008, Direction::Decreasing),
                   Curve::exponential(5.0, 0.01, Direction::Increasing), 0.5,
                   30.0, 90.0);
  double prev_c = eval_demand(cfg, 30.0);
  double prev_w = eval_supply(cfg, 15.0);
  for (int i = 1; i <= 32; ++i) {
    double p = 30.0 + 60.0 * i / 32.0;
    double c = eval_demand(cfg, p);
    double w = eval_supply(cfg, 0.5 * p);
    CHECK(c < prev_c);
    CHECK(w > prev_w);
    prev_c = c;
    prev_w = w;
  }
}

TEST_CASE("clearing price brackets the sign change at +-tol") {
  MarketConfig cfg = canonical_market(50.0, 90.0);
  double tol = cfg.clearing_tol();
  auto g = [&](double p) {
    return cfg.supply().eval(0.5 * p) - cfg.demand().eval(p);
  };
  CHECK(g(cfg.p_bal() - tol) < 0.0);
  CHECK(g(cfg.p_bal() + tol) > 0.0);
}

TEST_CASE("regime is invariant under rescaling both curves") {
  for (double k : {0.25, 3.0, 40.0}) {
    for (double lo : {40.0, 50.0, 70.0}) {
      MarketConfig base = canonical_market(lo, lo + 20.0);
      MarketConfig scaled(base.demand().scaled(k), base.supply().scaled(k),
                          base.gamma(), base.p_low(), base.p_high());
      CHECK(scaled.regime() == base.regime());
    }
  }
}
