#include "duopoly/games.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duopoly/detail/game_formulas.hpp"
#include "duopoly/errors.hpp"

namespace duopoly {

int profile_index(const Profile& p) {
  return (p.s1 == Strategy::H ? 2 : 0) + (p.s2 == Strategy::H ? 1 : 0);
}

std::string to_string(const Profile& p) {
  std::string s = "(";
  s += p.s1 == Strategy::L ? 'L' : 'H';
  s += ",";
  s += p.s2 == Strategy::L ? 'L' : 'H';
  s += ")";
  return s;
}

std::string to_string(Objective o) {
  return o == Objective::Throughput ? "throughput" : "revenue";
}

std::vector<Profile> NESet::profiles() const {
  std::vector<Profile> out;
  for (int i = 0; i < 4; ++i)
    if (member[i]) out.push_back(kProfiles[i]);
  return out;
}

std::string NESet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    if (!member[i]) continue;
    if (!first) os << ", ";
    os << to_string(kProfiles[i]);
    first = false;
  }
  os << "}";
  return os.str();
}

PayoffMatrix throughput_payoffs(const MarketConfig& cfg,
                                const LoyaltyModel& loyalty) {
  PayoffMatrix m;
  m.objective = Objective::Throughput;
  m.p_low = cfg.p_low();
  m.p_high = cfg.p_high();
  m.gamma = cfg.gamma();
  for (int i = 0; i < 4; ++i) {
    double p1 = kProfiles[i].s1 == Strategy::H ? cfg.p_high() : cfg.p_low();
    double p2 = kProfiles[i].s2 == Strategy::H ? cfg.p_high() : cfg.p_low();
    double beta = resolve_beta(loyalty, p1, p2);
    Allocation a = (beta == 0.0 || beta == 1.0)
                       ? degenerate_allocation(cfg, p1, p2, beta)
                       : optimal_allocation(cfg, p1, p2, beta);
    m.beta[i] = beta;
    m.pay1[i] = a.c1;
    m.pay2[i] = a.c2;
  }
  return m;
}

PayoffMatrix revenue_payoffs(const MarketConfig& cfg,
                             const LoyaltyModel& loyalty) {
  PayoffMatrix m = throughput_payoffs(cfg, loyalty);
  m.objective = Objective::Revenue;
  double retained = 1.0 - cfg.gamma();
  for (int i = 0; i < 4; ++i) {
    double p1 = kProfiles[i].s1 == Strategy::H ? cfg.p_high() : cfg.p_low();
    double p2 = kProfiles[i].s2 == Strategy::H ? cfg.p_high() : cfg.p_low();
    m.pay1[i] *= retained * p1;
    m.pay2[i] *= retained * p2;
  }
  return m;
}

NESet pure_nash(const std::array<double, 4>& pay1,
                const std::array<double, 4>& pay2, double eps) {
  if (eps < 0.0) throw DomainError("best-response tolerance must be >= 0");
  NESet ne;
  ne.eps = eps;
  ne.member = detail::pure_nash_flags(pay1, pay2, eps);
  return ne;
}

NESet pure_nash(const PayoffMatrix& m, double eps) {
  return pure_nash(m.pay1, m.pay2, eps);
}

double default_ne_eps(const PayoffMatrix& m) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    scale = std::max({scale, std::abs(m.pay1[i]), std::abs(m.pay2[i])});
  return 1e-9 * scale;
}

NESet predicted_ne(Objective objective, Regime regime,
                   const DerivedRatios& ratios, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("predicted equilibria need beta strictly inside (0, 1)");
  NESet ne;
  ne.member =
      objective == Objective::Throughput
          ? detail::predicted_flags_throughput(regime, ratios.rho,
                                               ratios.rho_w, ratios.rho_c,
                                               beta)
          : detail::predicted_flags_revenue(regime, ratios.f, ratios.rho,
                                            ratios.rho_w, ratios.rho_c, beta);
  return ne;
}

NESet predicted_ne(Objective objective, const MarketConfig& cfg,
                   const LoyaltyModel& loyalty) {
  if (!loyalty.is_fixed())
    throw DomainError("closed-form equilibrium prediction covers fixed "
                      "loyalty only; enumerate for price-dependent models");
  return predicted_ne(objective, cfg.regime(), derived_ratios(cfg),
                      loyalty.fixed_beta());
}

CrossObjectiveReport check_cross_objective_implications(const PayoffMatrix& tm,
                                                        const PayoffMatrix& rm,
                                                        double eps) {
  if (tm.objective != Objective::Throughput ||
      rm.objective != Objective::Revenue)
    throw DomainError("expected a throughput matrix and a revenue matrix");
  if (tm.p_low != rm.p_low || tm.p_high != rm.p_high ||
      tm.gamma != rm.gamma || tm.beta != rm.beta)
    throw DomainError("matrices come from different configurations");

  NESet tn = pure_nash(tm, eps > 0.0 ? eps : default_ne_eps(tm));
  NESet rn = pure_nash(rm, eps > 0.0 ? eps : default_ne_eps(rm));

  CrossObjectiveReport report;
  auto payoffs_at = [](const PayoffMatrix& m, int i) {
    std::ostringstream os;
    os << "pay1=" << m.pay1[i] << " pay2=" << m.pay2[i];
    return os.str();
  };
  if (tn.contains(kHH) && !rn.contains(kHH)) {
    report.hh_implication_ok = false;
    report.violations.push_back(
        "(H,H) is a throughput equilibrium but not a revenue equilibrium; "
        "revenue " + payoffs_at(rm, kHH));
  }
  if (rn.contains(kLL) && !tn.contains(kLL)) {
    report.ll_implication_ok = false;
    report.violations.push_back(
        "(L,L) is a revenue equilibrium but not a throughput equilibrium; "
        "throughput " + payoffs_at(tm, kLL));
  }
  return report;
}

NESet verify_existence_lemmas(double a1, double a2, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("lemma game needs beta strictly inside (0, 1)");
  if (!(0.0 < a1 && a1 <= a2))
    throw DomainError("lemma game needs 0 < a1 <= a2");

  double odds = beta / (1.0 - beta);
  std::array<double, 4> pay1 = {beta * a1, std::min(a1, beta * a2),
                                std::min(odds * a1, beta * a2), beta * a2};
  std::array<double, 4> pay2;
  for (int i = 0; i < 4; ++i) pay2[i] = (1.0 - beta) / beta * pay1[i];

  double ratio = a1 / a2;
  NESet clauses;
  clauses.member = {false, beta <= std::min(1.0, ratio),
                    beta >= 1.0 - ratio, true};

  // A hair of tolerance absorbs the one-rounding difference between
  // comparing beta to a1/a2 and comparing beta*a2 to a1.
  double eps = 1e-12 * std::max(a2, odds * a1);
  NESet enumerated = pure_nash(pay1, pay2, eps);
  if (!(enumerated == clauses))
    throw DomainError("lemma clause set " + clauses.str() +
                      " disagrees with enumeration " + enumerated.str() +
                      " at a1=" + std::to_string(a1) +
                      " a2=" + std::to_string(a2) +
                      " beta=" + std::to_string(beta));
  return clauses;
}

bool has_strict_best_response_cycle(const std::array<double, 4>& pay1,
                                    const std::array<double, 4>& pay2) {
  const double a11 = pay1[kLL], a12 = pay1[kLH], a21 = pay1[kHL],
               a22 = pay1[kHH];
  const double b11 = pay2[kLL], b12 = pay2[kLH], b21 = pay2[kHL],
               b22 = pay2[kHH];
  bool cycle_one = a22 < a12 && b22 > b21 && b11 > b12 && a11 < a21;
  bool cycle_two = a22 > a12 && b22 < b21 && b11 < b12 && a11 > a21;
  return cycle_one || cycle_two;
}

}  // namespace duopoly
