#include "duopoly/exact.hpp"

#include "duopoly/errors.hpp"

namespace duopoly::exact {

namespace {

Rational demand_at(const LinearMarket& m, const Rational& p) {
  return m.dem_intercept - m.dem_slope * p;
}

Rational supply_at(const LinearMarket& m, const Rational& p) {
  return m.sup_intercept + m.sup_slope * p;
}

}  // namespace

Rational clearing_price(const LinearMarket& m) {
  // dem_intercept - dem_slope p = sup_intercept + sup_slope gamma p
  Rational denom = m.dem_slope + m.sup_slope * m.gamma;
  if (denom == Rational(0))
    throw ConfigError("degenerate linear market: flat excess supply");
  return (m.dem_intercept - m.sup_intercept) / denom;
}

Regime regime(const LinearMarket& m) {
  Rational p_bal = clearing_price(m);
  if (m.p_high <= p_bal) return Regime::SupplyLimited;
  if (m.p_low >= p_bal) return Regime::DemandLimited;
  return Regime::Mixed;
}

detail::Ladder<Rational> ladder(const LinearMarket& m) {
  detail::Ladder<Rational> q;
  q.c_pl = demand_at(m, m.p_low);
  q.c_ph = demand_at(m, m.p_high);
  q.w_gpl = supply_at(m, m.gamma * m.p_low);
  q.w_gph = supply_at(m, m.gamma * m.p_high);
  q.p_l = m.p_low;
  q.p_h = m.p_high;
  const Rational zero(0);
  if (!(q.c_pl > zero && q.c_ph > zero && q.w_gpl > zero && q.w_gph > zero))
    throw ConfigError("exact market has a nonpositive quantity at a ladder "
                      "price");
  return q;
}

void payoff_matrices(const LinearMarket& m,
                     const std::array<Rational, 4>& betas, Objective objective,
                     std::array<Rational, 4>& pay1,
                     std::array<Rational, 4>& pay2) {
  detail::Ladder<Rational> q = ladder(m);
  detail::throughput_matrix(q, betas, pay1, pay2);
  if (objective == Objective::Revenue)
    detail::revenue_from_throughput(q, Rational(1) - m.gamma, pay1, pay2);
}

NESet enumerate_ne(const LinearMarket& m, const std::array<Rational, 4>& betas,
                   Objective objective) {
  std::array<Rational, 4> pay1, pay2;
  payoff_matrices(m, betas, objective, pay1, pay2);
  NESet ne;
  ne.member = detail::pure_nash_flags(pay1, pay2, Rational(0));
  return ne;
}

NESet predict_ne(const LinearMarket& m, const Rational& beta,
                 Objective objective) {
  if (!(beta > Rational(0) && beta < Rational(1)))
    throw DomainError("predicted equilibria need beta strictly inside (0, 1)");
  detail::Ladder<Rational> q = ladder(m);
  Rational rho = q.c_ph / q.w_gpl;
  Rational rho_w = q.w_gpl / q.w_gph;
  Rational rho_c = q.c_ph / q.c_pl;
  Rational f = q.p_l / q.p_h;
  NESet ne;
  ne.member =
      objective == Objective::Throughput
          ? detail::predicted_flags_throughput(regime(m), rho, rho_w, rho_c,
                                               beta)
          : detail::predicted_flags_revenue(regime(m), f, rho, rho_w, rho_c,
                                            beta);
  return ne;
}

Adjudication adjudicate_fixed(const LinearMarket& m, const Rational& beta,
                              Objective objective) {
  std::array<Rational, 4> betas = {beta, beta, beta, beta};
  return Adjudication{enumerate_ne(m, betas, objective),
                      predict_ne(m, beta, objective)};
}

}  // namespace duopoly::exact
