#ifndef DUOPOLY_CONFIG_HPP
#define DUOPOLY_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

#include "duopoly/allocation.hpp"
#include "duopoly/loyalty.hpp"
#include "duopoly/market.hpp"
#include "duopoly/sweep.hpp"

namespace duopoly {

// Stanza-based configuration text:
//
//   [demand]
//   family = linear          # linear | exponential | table
//   params = 100 1           # linear: intercept slope
//                            # exponential: scale rate
//                            # table: p:q pairs, e.g. 0:100 100:0
//   [supply]
//   family = linear
//   params = 0 1
//   [market]
//   gamma = 0.5
//   p_low = 50
//   p_high = 90
//   bracket = 0 180          # optional, defaults to [0, 2 p_high]
//   [loyalty]
//   variant = fixed          # fixed | price_sensitive | winner_takes_all
//   beta = 0.5               # fixed only
//   t = 0.2                  # price_sensitive only
//   [utility]                # optional overrides, see UtilityOverrides
//
// '#' and ';' start comments; keys are case-sensitive.
class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse_text(const std::string& text);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_number(const std::string& section, const std::string& key) const;
  double get_number_or(const std::string& section, const std::string& key,
                       double fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Optional [utility] overrides of the assumption-compliant defaults. Benefit
// curves are given as "family params..." in the same syntax as [demand].
struct UtilityOverrides {
  std::optional<double> maintenance_m;
  std::optional<double> d_worker;
  std::optional<double> d_customer;
  std::optional<Curve> worker_benefit;
  std::optional<Curve> customer_benefit;
};

Curve parse_curve(const std::string& family, const std::string& params,
                  Direction direction);

MarketConfig load_market_config(const IniFile& ini);
LoyaltyModel load_loyalty(const IniFile& ini);
UtilityOverrides load_utility_overrides(const IniFile& ini);

// Applies overrides on top of make_default_utility for the given profile.
UtilityParams resolve_utility(const UtilityOverrides& overrides, double gamma,
                              double p1, double p2, double beta);

// Sweep description:
//
//   [sweep]
//   regime = mixed           # mixed | supply_limited | demand_limited
//   objective = both         # throughput | revenue | both
//   ratio_grid = 0.1:0.1:3.0 # swept rho / rho_w / rho_c, start:step:end
//   f_grid = 0.2             # single value or grid
//   beta_grid = 0.01:0.01:0.99
//   gamma = 0.5
//   p_high = 100
//   out = regions.csv
SweepSpec load_sweep_spec(const IniFile& ini);

}  // namespace duopoly

#endif  // DUOPOLY_CONFIG_HPP
