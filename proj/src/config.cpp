#include "duopoly/config.hpp"

#include <fstream>
#include <sstream>

#include "duopoly/errors.hpp"

namespace duopoly {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + what + ", got '" + s + "'");
  }
}

}  // namespace

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

IniFile IniFile::parse_text(const std::string& text) {
  IniFile ini;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("bad section header on line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      ini.sections_[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw ConfigError("expected 'key = value' inside a [section] on line " +
                        std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key on line " +
                                       std::to_string(lineno));
    ini.sections_[section][key] = value;
  }
  return ini;
}

bool IniFile::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) != 0;
}

std::string IniFile::get(const std::string& section,
                         const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end())
    throw ConfigError("missing [" + section + "] section");
  auto kt = it->second.find(key);
  if (kt == it->second.end())
    throw ConfigError("missing key '" + key + "' in [" + section + "]");
  return kt->second;
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double IniFile::get_number(const std::string& section,
                           const std::string& key) const {
  return to_number(get(section, key), "[" + section + "]." + key);
}

double IniFile::get_number_or(const std::string& section,
                              const std::string& key, double fallback) const {
  return has(section, key) ? get_number(section, key) : fallback;
}

Curve parse_curve(const std::string& family, const std::string& params,
                  Direction direction) {
  std::vector<std::string> toks = split_ws(params);
  if (family == "linear") {
    if (toks.size() != 2)
      throw ConfigError("linear curve takes 'intercept slope', got '" +
                        params + "'");
    return Curve::linear(to_number(toks[0], "intercept"),
                         to_number(toks[1], "slope"), direction);
  }
  if (family == "exponential") {
    if (toks.size() != 2)
      throw ConfigError("exponential curve takes 'scale rate', got '" +
                        params + "'");
    return Curve::exponential(to_number(toks[0], "scale"),
                              to_number(toks[1], "rate"), direction);
  }
  if (family == "table") {
    std::vector<std::pair<double, double>> knots;
    for (const std::string& tok : toks) {
      std::size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw ConfigError("table knots are price:quantity pairs, got '" +
                          tok + "'");
      knots.emplace_back(to_number(tok.substr(0, colon), "knot price"),
                         to_number(tok.substr(colon + 1), "knot quantity"));
    }
    return Curve::table(std::move(knots), direction);
  }
  throw ConfigError("unknown curve family '" + family +
                    "' (expected linear, exponential or table)");
}

MarketConfig load_market_config(const IniFile& ini) {
  Curve demand = parse_curve(ini.get("demand", "family"),
                             ini.get("demand", "params"),
                             Direction::Decreasing);
  Curve supply = parse_curve(ini.get("supply", "family"),
                             ini.get("supply", "params"),
                             Direction::Increasing);
  double gamma = ini.get_number("market", "gamma");
  double p_low = ini.get_number("market", "p_low");
  double p_high = ini.get_number("market", "p_high");
  Bracket bracket;
  if (ini.has("market", "bracket")) {
    std::vector<std::string> toks = split_ws(ini.get("market", "bracket"));
    if (toks.size() != 2)
      throw ConfigError("bracket takes two numbers 'lo hi'");
    bracket.lo = to_number(toks[0], "bracket lo");
    bracket.hi = to_number(toks[1], "bracket hi");
  }
  return MarketConfig(std::move(demand), std::move(supply), gamma, p_low,
                      p_high, bracket);
}

LoyaltyModel load_loyalty(const IniFile& ini) {
  if (!ini.has_section("loyalty")) return LoyaltyModel::fixed(0.5);
  std::string variant = ini.get_or("loyalty", "variant", "fixed");
  if (variant == "fixed")
    return LoyaltyModel::fixed(ini.get_number_or("loyalty", "beta", 0.5));
  if (variant == "price_sensitive")
    return LoyaltyModel::price_sensitive(ini.get_number("loyalty", "t"));
  if (variant == "winner_takes_all") return LoyaltyModel::winner_takes_all();
  throw ConfigError("unknown loyalty variant '" + variant + "'");
}

UtilityOverrides load_utility_overrides(const IniFile& ini) {
  UtilityOverrides o;
  if (!ini.has_section("utility")) return o;
  if (ini.has("utility", "m")) o.maintenance_m = ini.get_number("utility", "m");
  if (ini.has("utility", "d_worker"))
    o.d_worker = ini.get_number("utility", "d_worker");
  if (ini.has("utility", "d_customer"))
    o.d_customer = ini.get_number("utility", "d_customer");
  auto parse_benefit = [&](const std::string& key) -> std::optional<Curve> {
    if (!ini.has("utility", key)) return std::nullopt;
    std::vector<std::string> toks = split_ws(ini.get("utility", key));
    if (toks.size() < 2)
      throw ConfigError(key + " takes 'family params...'");
    std::string family = toks.front();
    std::string params;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (i > 1) params += ' ';
      params += toks[i];
    }
    return parse_curve(family, params, Direction::Increasing);
  };
  o.worker_benefit = parse_benefit("worker_benefit");
  o.customer_benefit = parse_benefit("customer_benefit");
  return o;
}

UtilityParams resolve_utility(const UtilityOverrides& o, double gamma,
                              double p1, double p2, double beta) {
  double m = o.maintenance_m.value_or(1.0);
  UtilityParams params = make_default_utility(gamma, p1, p2, beta, m);
  if (o.worker_benefit) params.worker_benefit = *o.worker_benefit;
  if (o.customer_benefit) params.customer_benefit = *o.customer_benefit;
  if (o.d_worker) params.d_worker = *o.d_worker;
  if (o.d_customer) {
    params.d_customer = *o.d_customer;
  } else if (o.worker_benefit || o.customer_benefit || o.maintenance_m) {
    // Re-derive the assumption-compliant d_c for the overridden benefits.
    PerTransactionUtility u = per_transaction_utility(params, gamma, p1, p2);
    params.d_customer = 1.0 + std::max(beta / (1.0 - beta) * u.u1,
                                       (1.0 - beta) / beta * u.u2);
  }
  return params;
}

SweepSpec load_sweep_spec(const IniFile& ini) {
  SweepSpec spec;
  std::string regime = ini.get_or("sweep", "regime", "mixed");
  if (regime == "mixed")
    spec.regime = Regime::Mixed;
  else if (regime == "supply_limited")
    spec.regime = Regime::SupplyLimited;
  else if (regime == "demand_limited")
    spec.regime = Regime::DemandLimited;
  else
    throw ConfigError("unknown regime '" + regime + "'");

  std::string objective = ini.get_or("sweep", "objective", "both");
  if (objective == "throughput")
    spec.objectives = SweepObjectives::Throughput;
  else if (objective == "revenue")
    spec.objectives = SweepObjectives::Revenue;
  else if (objective == "both")
    spec.objectives = SweepObjectives::Both;
  else
    throw ConfigError("unknown objective '" + objective + "'");

  spec.ratio_grid = GridSpec::parse(ini.get("sweep", "ratio_grid"));
  spec.beta_grid = GridSpec::parse(ini.get("sweep", "beta_grid"));
  spec.f_grid = GridSpec::parse(ini.get_or("sweep", "f_grid", "0.2"));
  spec.gamma = Rational::parse(ini.get_or("sweep", "gamma", "0.5"));
  spec.p_high = Rational::parse(ini.get_or("sweep", "p_high", "100"));
  spec.output_path = ini.get_or("sweep", "out", "");
  return spec;
}

}  // namespace duopoly
