#include "duopoly/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "duopoly/errors.hpp"

namespace duopoly {

PerTransactionUtility per_transaction_utility(const UtilityParams& params,
                                              double gamma, double p1,
                                              double p2) {
  PerTransactionUtility out{};
  double prices[2] = {p1, p2};
  double us[2];
  for (int i = 0; i < 2; ++i) {
    double p = prices[i];
    if (!(p > 0.0)) throw AssumptionError("prices must be strictly positive");
    double bw = params.worker_benefit.eval(gamma * p);
    double bc = params.customer_benefit.eval(p);
    double worker_margin = bw - params.maintenance_m;
    double customer_margin = bc - p;
    if (!(worker_margin > 0.0))
      throw NonPositiveJoinUtility(NonPositiveJoinUtility::Side::Worker, i + 1,
                                   worker_margin);
    if (!(customer_margin > 0.0))
      throw NonPositiveJoinUtility(NonPositiveJoinUtility::Side::Customer,
                                   i + 1, customer_margin);
    us[i] = bw + bc - params.maintenance_m - p;
  }
  out.u1 = us[0];
  out.u2 = us[1];
  return out;
}

bool validate_assumption3(const PerTransactionUtility& u, double d_customer,
                          double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("beta must lie strictly inside (0, 1)");
  return d_customer > beta / (1.0 - beta) * u.u1 &&
         d_customer > (1.0 - beta) / beta * u.u2;
}

UtilityParams make_default_utility(double gamma, double p1, double p2,
                                   double beta, double maintenance_m) {
  UtilityParams params{
      Curve::linear(maintenance_m + 1.0, 1.0, Direction::Increasing),
      Curve::linear(1.0, 1.0, Direction::Increasing), maintenance_m, 1.0,
      1.0};
  PerTransactionUtility u = per_transaction_utility(params, gamma, p1, p2);
  params.d_customer = 1.0 + std::max(beta / (1.0 - beta) * u.u1,
                                     (1.0 - beta) / beta * u.u2);
  return params;
}

Allocation optimal_allocation(const MarketConfig& cfg, double p1, double p2,
                              double beta, const UtilityParams* audit) {
  if (!cfg.on_ladder(p1) || !cfg.on_ladder(p2))
    throw DomainError("profile prices must come from {p_low, p_high}");
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("beta must lie strictly inside (0, 1); the degenerate "
                      "limits are handled by degenerate_allocation");
  if (audit != nullptr) {
    PerTransactionUtility u =
        per_transaction_utility(*audit, cfg.gamma(), p1, p2);
    if (!validate_assumption3(u, audit->d_customer, beta))
      throw AssumptionError(
          "d_customer is too small: the welfare optimum may leave users "
          "unmatched");
  }

  double g = cfg.gamma();
  double odds = beta / (1.0 - beta);
  double w_gp1 = eval_supply(cfg, g * p1);
  double w_gp2 = eval_supply(cfg, g * p2);
  double c_p1 = eval_demand(cfg, p1);
  double c_p2 = eval_demand(cfg, p2);
  double c_min = eval_demand(cfg, std::min(p1, p2));
  double w_max = eval_supply(cfg, g * std::max(p1, p2));

  double c1 = std::min({w_gp1, odds * w_gp2, c_p1, odds * c_p2, beta * c_min,
                        beta * w_max});
  Allocation a;
  a.c1 = a.w1 = c1;
  a.c2 = a.w2 = (1.0 - beta) / beta * c1;
  return a;
}

double welfare(const Allocation& a, const PerTransactionUtility& u,
               double d_worker, double d_customer) {
  double m1 = std::min(a.c1, a.w1);
  double m2 = std::min(a.c2, a.w2);
  return u.u1 * m1 + u.u2 * m2 - d_worker * (a.w1 - m1 + a.w2 - m2) -
         d_customer * (a.c1 - m1 + a.c2 - m2);
}

OracleResult brute_force_allocation(const MarketConfig& cfg, double p1,
                                    double p2, double beta,
                                    const PerTransactionUtility& u,
                                    double d_worker, double d_customer,
                                    int resolution) {
  if (resolution < 50) throw DomainError("oracle resolution must be >= 50");
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("beta must lie strictly inside (0, 1)");

  double g = cfg.gamma();
  double w1_cap = eval_supply(cfg, g * p1);
  double w2_cap = eval_supply(cfg, g * p2);
  double c1_cap = eval_demand(cfg, p1);
  double c2_cap = eval_demand(cfg, p2);
  double x_cap = eval_demand(cfg, std::min(p1, p2));
  double w_total_cap = eval_supply(cfg, g * std::max(p1, p2));

  OracleResult res;
  res.step_x = x_cap / resolution;
  res.step_w1 = w1_cap / resolution;
  res.step_w2 = w2_cap / resolution;

  // The welfare at (x, w1, w2) splits into a w2-only part and the rest, so
  // the inner scan is one add and one compare per grid point:
  //   welfare = (u1 + d_c) min(c1,w1) - d_w (w1 - min(c1,w1))
  //           + (u2 + d_c) min(c2,w2) - d_w (w2 - min(c2,w2))
  //           - d_c (c1 + c2)
  // The first-found tie rule applies to these folded values; the returned
  // best_welfare is recomputed with welfare() at the winning point.
  std::vector<double> w2_grid(resolution + 1);
  std::vector<double> part_w2(resolution + 1);
  for (int k = 0; k <= resolution; ++k)
    w2_grid[k] = w2_cap * k / resolution;

  bool found = false;
  double best_folded = 0.0;
  Allocation best;

  for (int ix = 0; ix <= resolution; ++ix) {
    double x = x_cap * ix / resolution;
    double c1 = beta * x;
    double c2 = (1.0 - beta) * x;
    if (c1 > c1_cap || c2 > c2_cap) continue;
    double base_x = -d_customer * (c1 + c2);
    for (int k = 0; k <= resolution; ++k) {
      double m2 = std::min(c2, w2_grid[k]);
      part_w2[k] = (u.u2 + d_customer) * m2 - d_worker * (w2_grid[k] - m2);
    }
    for (int i1 = 0; i1 <= resolution; ++i1) {
      double w1 = w1_cap * i1 / resolution;
      if (w1 > w_total_cap) break;  // grid is ascending in w1
      double m1 = std::min(c1, w1);
      double base =
          base_x + (u.u1 + d_customer) * m1 - d_worker * (w1 - m1);
      for (int i2 = 0; i2 <= resolution; ++i2) {
        if (w1 + w2_grid[i2] > w_total_cap) break;
        double val = base + part_w2[i2];
        if (!found || val > best_folded) {
          found = true;
          best_folded = val;
          best = Allocation{w1, w2_grid[i2], c1, c2};
        }
      }
    }
  }
  res.best = best;
  res.best_welfare = welfare(best, u, d_worker, d_customer);
  return res;
}

}  // namespace duopoly
