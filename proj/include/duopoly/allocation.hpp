#ifndef DUOPOLY_ALLOCATION_HPP
#define DUOPOLY_ALLOCATION_HPP

#include <optional>

#include "duopoly/curve.hpp"
#include "duopoly/market.hpp"

namespace duopoly {

// Per-transaction utility ingredients: b_w(gamma p) accrues to the worker,
// b_c(p) to the customer, m is the worker's maintenance cost, and d_w/d_c
// are the disutilities of going unmatched.
struct UtilityParams {
  Curve worker_benefit;    // evaluated at the worker share gamma * p
  Curve customer_benefit;  // evaluated at the price p
  double maintenance_m = 0.0;
  double d_worker = 1.0;
  double d_customer = 1.0;
};

// u_i = b_w(gamma p_i) + b_c(p_i) - m - p_i, the joint surplus of one
// matched worker-customer pair at platform i.
struct PerTransactionUtility {
  double u1;
  double u2;
};

struct Allocation {
  double w1 = 0.0;
  double w2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

PerTransactionUtility per_transaction_utility(const UtilityParams& params,
                                              double gamma, double p1,
                                              double p2);

// d_c must strictly dominate both (beta/(1-beta)) u1 and ((1-beta)/beta) u2
// for the welfare optimum to leave nobody unmatched.
bool validate_assumption3(const PerTransactionUtility& u, double d_customer,
                          double beta);

// Utility parameters that satisfy the positivity and disutility assumptions
// by construction for the given prices: b_w(x) = x + m + 1, b_c(p) = p + 1,
// d_w = 1, d_c = 1 + max{(beta/(1-beta)) u1, ((1-beta)/beta) u2}.
UtilityParams make_default_utility(double gamma, double p1, double p2,
                                   double beta, double maintenance_m = 1.0);

// Closed-form welfare-optimal allocation:
//
//   c1 = w1 = min{ w(g p1), (b/(1-b)) w(g p2), c(p1), (b/(1-b)) c(p2),
//                  b c(min p), b w(max g p) }
//   c2 = w2 = ((1-b)/b) c1
//
// Requires beta strictly inside (0, 1) (the degenerate limits live in the
// loyalty module) and ladder prices. When `audit` params are supplied the
// utility assumptions are verified and violations throw; without them the
// assumptions are taken on faith.
Allocation optimal_allocation(const MarketConfig& cfg, double p1, double p2,
                              double beta,
                              const UtilityParams* audit = nullptr);

// Objective of problem (S):
//   u1 min{c1,w1} + u2 min{c2,w2}
//   - d_w (w1 - min{c1,w1} + w2 - min{c2,w2})
//   - d_c (c1 - min{c1,w1} + c2 - min{c2,w2})
double welfare(const Allocation& a, const PerTransactionUtility& u,
               double d_worker, double d_customer);

// Independent grid-search oracle for the allocation problem. The feasible
// set is scanned with x = c1 + c2 on [0, c(min p)] (c1 = beta x), and
// (w1, w2) on [0, w(g p1)] x [0, w(g p2)] intersected with
// w1 + w2 <= w(max g p). Ties resolve to the first point in scan order
// (x, then w1, then w2, all ascending), so results are reproducible.
struct OracleResult {
  Allocation best;
  double best_welfare = 0.0;
  // Grid steps actually used, for agreement tolerances.
  double step_x = 0.0;
  double step_w1 = 0.0;
  double step_w2 = 0.0;
};

OracleResult brute_force_allocation(const MarketConfig& cfg, double p1,
                                    double p2, double beta,
                                    const PerTransactionUtility& u,
                                    double d_worker, double d_customer,
                                    int resolution);

}  // namespace duopoly

#endif  // DUOPOLY_ALLOCATION_HPP
