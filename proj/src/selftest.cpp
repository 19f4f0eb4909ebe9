#include "duopoly/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "duopoly/allocation.hpp"
#include "duopoly/errors.hpp"
#include "duopoly/exact.hpp"
#include "duopoly/loyalty.hpp"
#include "duopoly/sweep.hpp"

namespace duopoly {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, 1)(rng) == 1;
}

}  // namespace

MarketConfig random_market(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    double gamma = uniform(rng, 0.2, 0.8);
    double p_high = uniform(rng, 40.0, 160.0);
    double p_low = uniform(rng, 0.25, 0.9) * p_high;
    double c_ph = uniform(rng, 5.0, 60.0);  // demand left at the high price

    Curve demand = [&] {
      if (coin(rng)) {
        double slope = uniform(rng, 0.4, 2.5);
        return Curve::linear(c_ph + slope * p_high, slope,
                             Direction::Decreasing);
      }
      double rate = uniform(rng, 0.002, 0.02);
      return Curve::exponential(c_ph * std::exp(rate * p_high), rate,
                                Direction::Decreasing);
    }();
    Curve supply =
        coin(rng)
            ? Curve::linear(0.0, uniform(rng, 0.2, 3.0), Direction::Increasing)
            : Curve::exponential(uniform(rng, 1.0, 40.0),
                                 uniform(rng, 0.002, 0.02),
                                 Direction::Increasing);
    try {
      MarketConfig cfg(demand, supply, gamma, p_low, p_high);
      derived_ratios(cfg);  // all ladder quantities positive
      return cfg;
    } catch (const ConfigError&) {
      continue;
    }
  }
  throw ConfigError("could not draw a valid random market in 200 attempts");
}

namespace {

using Check = std::function<void(std::ostringstream&)>;

CheckResult run_check(const std::string& name, const Check& body) {
  CheckResult res;
  res.name = name;
  std::ostringstream detail;
  try {
    body(detail);
    res.passed = true;
  } catch (const std::exception& e) {
    res.passed = false;
    detail << (detail.tellp() > 0 ? "; " : "") << e.what();
  }
  res.detail = detail.str();
  return res;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::runtime_error(message);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// ---- allocation oracle agreement --------------------------------------

struct OracleCase {
  MarketConfig cfg;
  double p1, p2, beta;
};

OracleCase random_oracle_case(std::mt19937_64& rng) {
  MarketConfig cfg = random_market(rng);
  double beta = uniform(rng, 0.05, 0.95);
  double p1 = coin(rng) ? cfg.p_low() : cfg.p_high();
  double p2 = coin(rng) ? cfg.p_low() : cfg.p_high();
  return OracleCase{std::move(cfg), p1, p2, beta};
}

void check_oracle_case(const OracleCase& oc, int resolution,
                       std::ostringstream& detail) {
  const MarketConfig& cfg = oc.cfg;
  UtilityParams params =
      make_default_utility(cfg.gamma(), oc.p1, oc.p2, oc.beta);
  PerTransactionUtility u =
      per_transaction_utility(params, cfg.gamma(), oc.p1, oc.p2);
  require(validate_assumption3(u, params.d_customer, oc.beta),
          "default utility params should satisfy the disutility bound");

  Allocation closed = optimal_allocation(cfg, oc.p1, oc.p2, oc.beta, &params);
  OracleResult brute =
      brute_force_allocation(cfg, oc.p1, oc.p2, oc.beta, u, params.d_worker,
                             params.d_customer, resolution);
  double w_closed = welfare(closed, u, params.d_worker, params.d_customer);

  double lipschitz = std::max(u.u1, u.u2) + params.d_customer +
                     params.d_worker;
  double eps_grid =
      lipschitz * (brute.step_x + brute.step_w1 + brute.step_w2);
  double scale = std::max(1.0, std::abs(w_closed));

  require(w_closed >= brute.best_welfare - 1e-9 * scale,
          "closed form scored below the grid oracle: " + fmt(w_closed) +
              " < " + fmt(brute.best_welfare));
  require(w_closed - brute.best_welfare <= eps_grid,
          "grid oracle landed " + fmt(w_closed - brute.best_welfare) +
              " below the closed form; eps_grid = " + fmt(eps_grid));

  // Workers track customers at a matched optimum, so their agreement step
  // inherits the customer-grid step.
  double s_c1 = oc.beta * brute.step_x;
  double s_c2 = (1.0 - oc.beta) * brute.step_x;
  double s_w1 = brute.step_w1 + s_c1;
  double s_w2 = brute.step_w2 + s_c2;
  require(std::abs(brute.best.c1 - closed.c1) <= 1.5 * s_c1 + 1e-12,
          "c1 gap " + fmt(std::abs(brute.best.c1 - closed.c1)));
  require(std::abs(brute.best.c2 - closed.c2) <= 1.5 * s_c2 + 1e-12,
          "c2 gap " + fmt(std::abs(brute.best.c2 - closed.c2)));
  require(std::abs(brute.best.w1 - closed.w1) <= 1.5 * s_w1 + 1e-12,
          "w1 gap " + fmt(std::abs(brute.best.w1 - closed.w1)));
  require(std::abs(brute.best.w2 - closed.w2) <= 1.5 * s_w2 + 1e-12,
          "w2 gap " + fmt(std::abs(brute.best.w2 - closed.w2)));
  // No unmatched users at the brute optimum (within a grid cell).
  require(std::abs(brute.best.c1 - brute.best.w1) <= 1.5 * s_w1 + 1e-12 &&
              std::abs(brute.best.c2 - brute.best.w2) <= 1.5 * s_w2 + 1e-12,
          "grid optimum left users unmatched despite the disutility bound");

  // Closed form is feasible for the allocation problem.
  double g = cfg.gamma();
  double slack = 1e-9 * (1.0 + std::abs(closed.c1) + std::abs(closed.c2));
  require(
      closed.w1 <= eval_supply(cfg, g * oc.p1) + slack &&
          closed.w2 <= eval_supply(cfg, g * oc.p2) + slack &&
          closed.c1 <= eval_demand(cfg, oc.p1) + slack &&
          closed.c2 <= eval_demand(cfg, oc.p2) + slack &&
          closed.c1 + closed.c2 <=
              eval_demand(cfg, std::min(oc.p1, oc.p2)) + slack &&
          closed.w1 + closed.w2 <=
              eval_supply(cfg, g * std::max(oc.p1, oc.p2)) + slack,
      "closed-form allocation violates a feasibility bound");
  (void)detail;
}

// ---- fixed-loyalty sweep helpers ---------------------------------------

SweepSpec coarse_spec(Regime regime) {
  SweepSpec spec;
  spec.regime = regime;
  spec.objectives = SweepObjectives::Both;
  spec.beta_grid = GridSpec{Rational(1, 20), Rational(1, 20), 19};
  spec.ratio_grid = regime == Regime::Mixed
                        ? GridSpec{Rational(1, 5), Rational(1, 5), 15}
                        : GridSpec{Rational(1, 10), Rational(1, 10), 9};
  spec.f_grid = GridSpec{Rational(1, 5), Rational(0), 1};
  return spec;
}

std::vector<MarketConfig> regime_sample_configs() {
  std::vector<MarketConfig> out;
  for (Regime regime :
       {Regime::Mixed, Regime::SupplyLimited, Regime::DemandLimited}) {
    for (const char* ratio : {"0.3", "0.7"}) {
      auto market = realize_market(regime, Rational::parse(ratio),
                                   Rational(2, 5), Rational(1, 2),
                                   Rational(100));
      require(market.has_value(), "sample regime config must be realizable");
      out.push_back(to_market_config(*market));
    }
  }
  // A mixed market with rho > 1 (demand outweighs low-price supply).
  auto market = realize_market(Regime::Mixed, Rational(2), Rational(1, 4),
                               Rational(1, 2), Rational(100));
  require(market.has_value(), "rho=2 mixed config must be realizable");
  out.push_back(to_market_config(*market));
  return out;
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, const Check& body) {
    results.push_back(run_check(name, body));
  };

  add("curve monotonicity on random markets", [&](std::ostringstream&) {
    std::mt19937_64 rng(options.seed);
    for (int i = 0; i < options.random_configs; ++i) {
      MarketConfig cfg = random_market(rng);
      double lo = cfg.p_low(), hi = cfg.p_high();
      for (int k = 0; k + 1 < 16; ++k) {
        double a = lo + (hi - lo) * k / 15.0;
        double b = lo + (hi - lo) * (k + 1) / 15.0;
        require(eval_demand(cfg, a) > eval_demand(cfg, b),
                "demand failed to decrease");
        require(eval_supply(cfg, cfg.gamma() * a) <
                    eval_supply(cfg, cfg.gamma() * b),
                "supply failed to increase");
      }
    }
  });

  add("clearing price brackets the sign change", [&](std::ostringstream&) {
    std::mt19937_64 rng(options.seed + 1);
    for (int i = 0; i < options.random_configs; ++i) {
      MarketConfig cfg = random_market(rng);
      double tol = cfg.clearing_tol();
      auto g = [&](double p) {
        return cfg.supply().eval(cfg.gamma() * p) - cfg.demand().eval(p);
      };
      require(g(cfg.p_bal() - tol) < 0.0 && g(cfg.p_bal() + tol) > 0.0,
              "w(gamma p) - c(p) does not change sign across p_bal");
    }
  });

  add("regime trichotomy and rescale invariance", [&](std::ostringstream&) {
    std::mt19937_64 rng(options.seed + 2);
    for (int i = 0; i < options.random_configs; ++i) {
      MarketConfig cfg = random_market(rng);
      int tags = (cfg.regime() == Regime::SupplyLimited) +
                 (cfg.regime() == Regime::DemandLimited) +
                 (cfg.regime() == Regime::Mixed);
      require(tags == 1, "regime classification must pick exactly one tag");
      double k = uniform(rng, 0.1, 10.0);
      MarketConfig scaled(cfg.demand().scaled(k), cfg.supply().scaled(k),
                          cfg.gamma(), cfg.p_low(), cfg.p_high());
      require(scaled.regime() == cfg.regime(),
              "rescaling both curves changed the regime");
    }
  });

  add("derived ratio identities", [&](std::ostringstream&) {
    std::mt19937_64 rng(options.seed + 3);
    for (int i = 0; i < options.random_configs; ++i) {
      MarketConfig cfg = random_market(rng);
      DerivedRatios r = derived_ratios(cfg);
      double g = cfg.gamma();
      double lhs1 = r.rho;
      double rhs1 = r.rho_c * eval_demand(cfg, cfg.p_low()) /
                    eval_supply(cfg, g * cfg.p_low());
      double lhs2 = r.rho * r.rho_w;
      double rhs2 = eval_demand(cfg, cfg.p_high()) /
                    eval_supply(cfg, g * cfg.p_high());
      require(std::abs(lhs1 - rhs1) <= 1e-9 * std::abs(lhs1) &&
                  std::abs(lhs2 - rhs2) <= 1e-9 * std::abs(lhs2),
              "ratio identities broke at config " + std::to_string(i));
    }
  });

  add("allocation oracle agreement", [&](std::ostringstream& detail) {
    std::mt19937_64 rng(options.seed + 4);
    for (int i = 0; i < options.random_configs; ++i) {
      OracleCase oc = random_oracle_case(rng);
      check_oracle_case(oc, options.oracle_resolution, detail);
    }
    detail << options.random_configs << " configs at resolution "
           << options.oracle_resolution;
  });

  add("allocation monotone in beta and scale-equivariant",
      [&](std::ostringstream&) {
        std::mt19937_64 rng(options.seed + 5);
        for (int i = 0; i < 20; ++i) {
          MarketConfig cfg = random_market(rng);
          double p1 = coin(rng) ? cfg.p_low() : cfg.p_high();
          double p2 = coin(rng) ? cfg.p_low() : cfg.p_high();
          double prev = -1.0;
          for (int b = 1; b <= 19; ++b) {
            double beta = b / 20.0;
            Allocation a = optimal_allocation(cfg, p1, p2, beta);
            require(a.c1 >= prev - 1e-12,
                    "c1 decreased as loyalty grew");
            prev = a.c1;
          }
          double k = uniform(rng, 0.2, 5.0);
          MarketConfig scaled(cfg.demand().scaled(k), cfg.supply().scaled(k),
                              cfg.gamma(), cfg.p_low(), cfg.p_high());
          Allocation a = optimal_allocation(cfg, p1, p2, 0.35);
          Allocation s = optimal_allocation(scaled, p1, p2, 0.35);
          require(std::abs(s.c1 - k * a.c1) <= 1e-9 * (1.0 + k * a.c1),
                  "allocation did not scale with the curves");
        }
      });

  add("loyalty symmetry and degenerate totals", [&](std::ostringstream&) {
    for (const char* t : {"0.05", "0.2", "0.45"}) {
      LoyaltyModel ps = LoyaltyModel::price_sensitive(Rational::parse(t).to_double());
      require(resolve_beta(ps, 1.0, 2.0) + resolve_beta(ps, 2.0, 1.0) == 1.0,
              "price-sensitive split is not price-symmetric");
    }
    LoyaltyModel wta = LoyaltyModel::winner_takes_all();
    require(resolve_beta(wta, 1.0, 2.0) == 1.0 &&
                resolve_beta(wta, 2.0, 1.0) == 0.0 &&
                resolve_beta(wta, 2.0, 2.0) == 0.5,
            "winner-take-all split is wrong");
    for (const MarketConfig& cfg : regime_sample_configs()) {
      Allocation a =
          degenerate_allocation(cfg, cfg.p_low(), cfg.p_high(), 1.0);
      double single =
          std::min(eval_demand(cfg, cfg.p_low()),
                   eval_supply(cfg, cfg.gamma() * cfg.p_low()));
      require(a.c2 == 0.0 && a.w2 == 0.0,
              "unfavored platform must be empty");
      require(a.c1 <= single + 1e-12,
              "favored platform exceeded single-platform throughput");
      if (std::min(eval_demand(cfg, cfg.p_low()),
                   eval_supply(cfg, cfg.gamma() * cfg.p_low())) <=
          eval_supply(cfg, cfg.gamma() * cfg.p_high()))
        require(std::abs(a.c1 - single) <= 1e-12,
                "favored platform should serve the single-platform "
                "throughput when its own constraints bind");
    }
  });

  add("payoff matrix structure", [&](std::ostringstream&) {
    std::mt19937_64 rng(options.seed + 6);
    for (const MarketConfig& cfg : regime_sample_configs()) {
      double beta = uniform(rng, 0.1, 0.9);
      LoyaltyModel fixed = LoyaltyModel::fixed(beta);
      PayoffMatrix tm = throughput_payoffs(cfg, fixed);
      PayoffMatrix rm = revenue_payoffs(cfg, fixed);
      double retained = 1.0 - cfg.gamma();
      for (int i = 0; i < 4; ++i) {
        double ratio = (1.0 - beta) / beta;
        require(std::abs(tm.pay2[i] - ratio * tm.pay1[i]) <=
                    1e-9 * (1.0 + std::abs(tm.pay1[i])),
                "platform 2 throughput is not the scaled platform 1 "
                "throughput");
        double p1 = kProfiles[i].s1 == Strategy::H ? cfg.p_high()
                                                   : cfg.p_low();
        require(std::abs(rm.pay1[i] - retained * p1 * tm.pay1[i]) <=
                    1e-9 * (1.0 + rm.pay1[i]),
                "revenue is not (1-gamma) p N");
      }
      // Positive rescaling never changes the equilibrium set.
      NESet base = pure_nash(tm, default_ne_eps(tm));
      PayoffMatrix scaled = tm;
      for (int i = 0; i < 4; ++i) {
        scaled.pay1[i] *= 7.5;
        scaled.pay2[i] *= 7.5;
      }
      require(pure_nash(scaled, default_ne_eps(scaled)) == base,
              "equilibria changed under positive payoff scaling");
      for (const LoyaltyModel& model :
           {LoyaltyModel::price_sensitive(0.2),
            LoyaltyModel::winner_takes_all()}) {
        PayoffMatrix sym = throughput_payoffs(cfg, model);
        require(sym.pay1[kLH] == sym.pay2[kHL] &&
                    sym.pay1[kHL] == sym.pay2[kLH] &&
                    sym.pay1[kLL] == sym.pay2[kLL] &&
                    sym.pay1[kHH] == sym.pay2[kHH],
                "price-symmetric loyalty must give a price-symmetric game");
      }
    }
  });

  add("theorem agreement on coarse sweeps", [&](std::ostringstream& detail) {
    int points = 0, adjudicated = 0;
    for (Regime regime :
         {Regime::Mixed, Regime::SupplyLimited, Regime::DemandLimited}) {
      for (const RegionRecord& rec : run_sweep(coarse_spec(regime))) {
        require(rec.realizable, "coarse sweep hit an unrealizable point");
        require(rec.agree, "enumeration and prediction disagree at beta=" +
                               fmt(rec.beta) + " in " + rec.regime_label +
                               " (" + rec.note + ")");
        ++points;
        adjudicated += rec.adjudicated ? 1 : 0;
      }
    }
    detail << points << " points, " << adjudicated
           << " settled by exact arithmetic";
  });

  add("equilibrium existence for every loyalty model",
      [&](std::ostringstream&) {
        for (const MarketConfig& cfg : regime_sample_configs()) {
          std::vector<LoyaltyModel> models = {
              LoyaltyModel::price_sensitive(0.05),
              LoyaltyModel::price_sensitive(0.2),
              LoyaltyModel::price_sensitive(0.45),
              LoyaltyModel::winner_takes_all()};
          for (int b = 1; b <= 19; ++b)
            models.push_back(LoyaltyModel::fixed(b / 20.0));
          for (const LoyaltyModel& model : models) {
            PayoffMatrix tm = throughput_payoffs(cfg, model);
            PayoffMatrix rm = revenue_payoffs(cfg, model);
            require(!pure_nash(tm, default_ne_eps(tm)).empty(),
                    "no pure throughput equilibrium under " +
                        model.describe());
            require(!pure_nash(rm, default_ne_eps(rm)).empty(),
                    "no pure revenue equilibrium under " + model.describe());
          }
        }
      });

  add("cross-objective implications", [&](std::ostringstream&) {
    std::mt19937_64 rng(options.seed + 7);
    std::vector<MarketConfig> configs = regime_sample_configs();
    for (int i = 0; i < options.random_configs; ++i)
      configs.push_back(random_market(rng));
    for (const MarketConfig& cfg : configs) {
      std::vector<LoyaltyModel> models = {LoyaltyModel::price_sensitive(0.2),
                                          LoyaltyModel::winner_takes_all()};
      for (int b = 1; b <= 9; ++b)
        models.push_back(LoyaltyModel::fixed(b / 10.0));
      for (const LoyaltyModel& model : models) {
        CrossObjectiveReport report = check_cross_objective_implications(
            throughput_payoffs(cfg, model), revenue_payoffs(cfg, model), 0.0);
        require(report.ok(), report.violations.empty()
                                 ? "implication violated"
                                 : report.violations.front());
      }
    }
  });

  add("abstract game lemma on a 50x50 grid", [&](std::ostringstream&) {
    for (int i = 1; i <= 50; ++i) {
      double a2 = 50.0;
      double a1 = a2 * i / 50.0;
      for (int j = 1; j <= 50; ++j) {
        double beta = j / 51.0;
        verify_existence_lemmas(a1, a2, beta);  // throws on clause mismatch
      }
    }
  });

  add("random bimatrix games: no-cycle implies a pure equilibrium",
      [&](std::ostringstream& detail) {
        std::mt19937_64 rng(options.seed + 8);
        int skipped = 0;
        for (int i = 0; i < options.random_games; ++i) {
          std::array<double, 4> pay1, pay2;
          for (int k = 0; k < 4; ++k) {
            pay1[k] = uniform(rng, -10.0, 10.0);
            pay2[k] = uniform(rng, -10.0, 10.0);
          }
          if (has_strict_best_response_cycle(pay1, pay2)) {
            ++skipped;
            continue;
          }
          require(!pure_nash(pay1, pay2, 0.0).empty(),
                  "cycle-free game without a pure equilibrium at index " +
                      std::to_string(i));
        }
        detail << options.random_games - skipped << " games checked, "
               << skipped << " had best-response cycles";
      });

  add("sweep output is deterministic", [&](std::ostringstream&) {
    SweepSpec spec = coarse_spec(Regime::Mixed);
    spec.beta_grid = GridSpec{Rational(1, 10), Rational(1, 10), 9};
    std::string once = to_csv(run_sweep(spec));
    std::string twice = to_csv(run_sweep(spec));
    require(once == twice, "identical sweeps produced different CSV bytes");
  });

  return results;
}

}  // namespace duopoly
