#ifndef DUOPOLY_DETAIL_GAME_FORMULAS_HPP
#define DUOPOLY_DETAIL_GAME_FORMULAS_HPP

#include <array>

#include "duopoly/market.hpp"

namespace duopoly::detail {

// Shared arithmetic core of the 2x2 price game, templated so the same
// formulas run in doubles for the sweeps and in exact rationals when a
// weak-inequality boundary has to be adjudicated.

template <class T>
struct Ladder {
  T c_pl;   // c(p_L)
  T c_ph;   // c(p_H)
  T w_gpl;  // w(gamma p_L)
  T w_gph;  // w(gamma p_H)
  T p_l;
  T p_h;
};

template <class T>
const T& tmin(const T& a, const T& b) {
  return b < a ? b : a;
}
template <class T>
const T& tmax(const T& a, const T& b) {
  return a < b ? b : a;
}

// Welfare-optimal share of "own" platform at a profile where it posts the
// high/low price as indicated; own_beta is the customer fraction loyal to
// it (beta for Platform 1, 1-beta for Platform 2). own_beta in {0, 1}
// selects the winner-take-all limit.
template <class T>
T routed_share(const Ladder<T>& q, bool own_high, bool other_high,
               const T& own_beta) {
  const T& c_own = own_high ? q.c_ph : q.c_pl;
  const T& c_other = other_high ? q.c_ph : q.c_pl;
  const T& w_own = own_high ? q.w_gph : q.w_gpl;
  const T& w_other = other_high ? q.w_gph : q.w_gpl;
  const T& c_at_min_price = (own_high && other_high) ? q.c_ph : q.c_pl;
  const T& w_at_max_share = (own_high || other_high) ? q.w_gph : q.w_gpl;

  if (own_beta == T(0)) return T(0);
  if (own_beta == T(1))
    return tmin(tmin(w_own, c_own), tmin(c_at_min_price, w_at_max_share));

  T odds = own_beta / (T(1) - own_beta);
  T m = tmin(w_own, T(odds * w_other));
  m = tmin(m, c_own);
  m = tmin(m, T(odds * c_other));
  m = tmin(m, T(own_beta * c_at_min_price));
  m = tmin(m, T(own_beta * w_at_max_share));
  return m;
}

// Throughput payoffs of both platforms for all four profiles, with a
// per-profile customer split (betas follow the LL, LH, HL, HH order).
template <class T>
void throughput_matrix(const Ladder<T>& q, const std::array<T, 4>& betas,
                       std::array<T, 4>& pay1, std::array<T, 4>& pay2) {
  const bool high1[4] = {false, false, true, true};
  const bool high2[4] = {false, true, false, true};
  for (int i = 0; i < 4; ++i) {
    pay1[i] = routed_share(q, high1[i], high2[i], betas[i]);
    pay2[i] = routed_share(q, high2[i], high1[i], T(T(1) - betas[i]));
  }
}

// pay_i = (1 - gamma) p_i N_i, in place over a throughput matrix.
template <class T>
void revenue_from_throughput(const Ladder<T>& q, const T& one_minus_gamma,
                             std::array<T, 4>& pay1, std::array<T, 4>& pay2) {
  const bool high1[4] = {false, false, true, true};
  const bool high2[4] = {false, true, false, true};
  for (int i = 0; i < 4; ++i) {
    pay1[i] = one_minus_gamma * (high1[i] ? q.p_h : q.p_l) * pay1[i];
    pay2[i] = one_minus_gamma * (high2[i] ? q.p_h : q.p_l) * pay2[i];
  }
}

// Weak best-response test. Profile indices: LL=0, LH=1, HL=2, HH=3; the row
// deviation flips bit 2, the column deviation flips bit 1.
template <class T>
std::array<bool, 4> pure_nash_flags(const std::array<T, 4>& pay1,
                                    const std::array<T, 4>& pay2,
                                    const T& eps) {
  std::array<bool, 4> in{};
  for (int i = 0; i < 4; ++i) {
    bool row_ok = !(pay1[i] < T(pay1[i ^ 2] - eps));
    bool col_ok = !(pay2[i] < T(pay2[i ^ 1] - eps));
    in[i] = row_ok && col_ok;
  }
  return in;
}

// Closed-form equilibrium conditions for fixed loyalty, with weak
// inequalities kept weak and the max/min clamps evaluated literally (an
// empty clamped interval simply admits no beta). Order: LL, LH, HL, HH.
template <class T>
std::array<bool, 4> predicted_flags_throughput(Regime regime, const T& rho,
                                               const T& rho_w, const T& rho_c,
                                               const T& beta) {
  const T zero(0), one(1);
  std::array<bool, 4> in{};
  switch (regime) {
    case Regime::Mixed: {
      T inv_rho = one / rho;
      in[0] = tmax(rho, zero) <= beta && beta <= tmin(T(one - rho), one);
      in[1] = tmax(T(one - rho), zero) <= beta && beta <= tmin(inv_rho, one);
      in[2] = tmax(T(one - inv_rho), zero) <= beta && beta <= tmin(rho, one);
      in[3] = tmax(inv_rho, zero) <= beta &&
              beta <= tmin(T(one - inv_rho), one);
      break;
    }
    case Regime::SupplyLimited:
      in[0] = false;
      in[3] = true;
      in[1] = beta <= tmin(one, rho_w);
      in[2] = tmax(T(one - rho_w), zero) <= beta;
      break;
    case Regime::DemandLimited:
      in[0] = true;
      in[3] = false;
      in[1] = tmax(T(one - rho_c), zero) <= beta;
      in[2] = beta <= tmin(one, rho_c);
      break;
  }
  return in;
}

template <class T>
std::array<bool, 4> predicted_flags_revenue(Regime regime, const T& f,
                                            const T& rho, const T& rho_w,
                                            const T& rho_c, const T& beta) {
  const T one(1);
  T cobeta = one - beta;
  T inv_f = one / f;
  std::array<bool, 4> in{};
  switch (regime) {
    case Regime::SupplyLimited:
      // (H, H) is the unique equilibrium: high price is strictly dominant.
      in[3] = true;
      break;
    case Regime::DemandLimited: {
      T inv_rc = one / rho_c;
      in[0] = f >= tmin(T(rho_c / beta), one) &&
              f >= tmin(T(rho_c / cobeta), one);
      in[1] = inv_f <= tmin(T(one / cobeta), inv_rc) &&
              f <= tmin(T(rho_c / cobeta), one);
      in[2] = inv_f <= tmin(T(one / beta), inv_rc) &&
              f <= tmin(T(rho_c / beta), one);
      in[3] = inv_f >= tmin(T(one / cobeta), inv_rc) &&
              inv_f >= tmin(T(one / beta), inv_rc);
      break;
    }
    case Regime::Mixed: {
      auto four_min = [&](const T& b) {
        T m = tmin(T(one / b), T(one / rho_c));
        m = tmin(m, T(one / (rho * (one - b))));
        return tmin(m, T(one / (rho * rho_w)));
      };
      // four_min(cobeta) pairs 1/(1-beta) with 1/(rho beta) and vice versa.
      T min_b = four_min(beta);
      T min_cb = four_min(cobeta);
      in[0] = f >= rho / cobeta && f >= rho / beta;
      in[1] = inv_f <= min_cb && f <= rho / cobeta;
      in[2] = inv_f <= min_b && f <= rho / beta;
      in[3] = inv_f >= min_cb && inv_f >= min_b;
      break;
    }
  }
  return in;
}

}  // namespace duopoly::detail

#endif  // DUOPOLY_DETAIL_GAME_FORMULAS_HPP
