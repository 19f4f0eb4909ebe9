#ifndef DUOPOLY_GAMES_HPP
#define DUOPOLY_GAMES_HPP

#include <array>
#include <string>
#include <vector>

#include "duopoly/loyalty.hpp"
#include "duopoly/market.hpp"

namespace duopoly {

enum class Strategy { L, H };

struct Profile {
  Strategy s1;
  Strategy s2;

  friend bool operator==(const Profile&, const Profile&) = default;
};

// Profiles in fixed enumeration order LL, LH, HL, HH (first letter is the
// row player, Platform 1).
inline constexpr std::array<Profile, 4> kProfiles = {
    Profile{Strategy::L, Strategy::L}, Profile{Strategy::L, Strategy::H},
    Profile{Strategy::H, Strategy::L}, Profile{Strategy::H, Strategy::H}};

inline constexpr int kLL = 0, kLH = 1, kHL = 2, kHH = 3;

int profile_index(const Profile& p);
std::string to_string(const Profile& p);

enum class Objective { Throughput, Revenue };

std::string to_string(Objective o);

// Payoffs of the 2x2 price game, indexed by kLL..kHH. beta[i] is the
// customer split in force at that profile (constant under fixed loyalty).
struct PayoffMatrix {
  Objective objective = Objective::Throughput;
  std::array<double, 4> pay1{};
  std::array<double, 4> pay2{};
  std::array<double, 4> beta{};
  // Provenance, used to pair matrices in cross-objective checks.
  double p_low = 0.0;
  double p_high = 0.0;
  double gamma = 0.0;
};

// The pure-strategy equilibria found (or predicted) for one game, in fixed
// profile order.
struct NESet {
  std::array<bool, 4> member{};
  double eps = 0.0;

  bool contains(int profile) const { return member[profile]; }
  bool empty() const {
    return !(member[0] || member[1] || member[2] || member[3]);
  }
  int size() const {
    return int(member[0]) + int(member[1]) + int(member[2]) + int(member[3]);
  }
  std::vector<Profile> profiles() const;
  std::string str() const;

  friend bool operator==(const NESet& a, const NESet& b) {
    return a.member == b.member;
  }
};

// One throughput/revenue matrix per price profile: beta comes from the
// loyalty model, the user allocation from the welfare optimum (or its
// degenerate winner-take-all limit), and N_i = c_i = w_i.
PayoffMatrix throughput_payoffs(const MarketConfig& cfg,
                                const LoyaltyModel& loyalty);

// pay_i = (1 - gamma) * p_i * N_i. Stored at face value; dropping the
// (1 - gamma) factor would not change any equilibrium.
PayoffMatrix revenue_payoffs(const MarketConfig& cfg,
                             const LoyaltyModel& loyalty);

// Weak best-response enumeration: profile (k, l) is an equilibrium iff
// neither player can gain more than eps by a unilateral switch. Payoff ties
// therefore yield multiple equilibria.
NESet pure_nash(const std::array<double, 4>& pay1,
                const std::array<double, 4>& pay2, double eps);
NESet pure_nash(const PayoffMatrix& m, double eps);

// 1e-9 times the largest payoff magnitude in the matrix.
double default_ne_eps(const PayoffMatrix& m);

// The equilibrium set implied by the closed-form conditions for a fixed
// loyalty beta, evaluated exactly as printed (weak inequalities weak, empty
// clamp intervals meaning "not an equilibrium").
NESet predicted_ne(Objective objective, Regime regime,
                   const DerivedRatios& ratios, double beta);

// Convenience overload; throws DomainError for non-fixed loyalty models,
// whose equilibria are only available by enumeration.
NESet predicted_ne(Objective objective, const MarketConfig& cfg,
                   const LoyaltyModel& loyalty);

// Checks the one-way bridges between the two objectives on matrices built
// from the same config: (H,H) a throughput equilibrium forces (H,H) a
// revenue equilibrium, and (L,L) a revenue equilibrium forces (L,L) a
// throughput equilibrium.
struct CrossObjectiveReport {
  bool hh_implication_ok = true;
  bool ll_implication_ok = true;
  std::vector<std::string> violations;

  bool ok() const { return hh_implication_ok && ll_implication_ok; }
};

CrossObjectiveReport check_cross_objective_implications(const PayoffMatrix& tm,
                                                        const PayoffMatrix& rm,
                                                        double eps);

// The abstract two-strategy game with row payoffs
//   (S1,S1): b a1   (S1,S2): min{a1, b a2}
//   (S2,S1): min{b/(1-b) a1, b a2}   (S2,S2): b a2
// and column payoffs scaled by (1-b)/b. For 0 < a1 <= a2 its equilibria are
// exactly: never (S1,S1); always (S2,S2); (S1,S2) iff b <= a1/a2; (S2,S1)
// iff b >= 1 - a1/a2. Returns that set (S1 mapped to L, S2 to H) after
// checking it against direct enumeration of the table.
NESet verify_existence_lemmas(double a1, double a2, double beta);

// Sign patterns that are the only way a 2x2 bimatrix game can lack a pure
// equilibrium: a strict best-response cycle in either orientation.
bool has_strict_best_response_cycle(const std::array<double, 4>& pay1,
                                    const std::array<double, 4>& pay2);

}  // namespace duopoly

#endif  // DUOPOLY_GAMES_HPP
