#include "duopoly/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "duopoly/errors.hpp"

namespace duopoly {

std::vector<Rational> GridSpec::values() const {
  if (count < 1) throw ConfigError("grid needs at least one point");
  std::vector<Rational> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(start + Rational(k) * step);
  return out;
}

GridSpec GridSpec::parse(const std::string& text) {
  std::size_t c1 = text.find(':');
  if (c1 == std::string::npos)
    return GridSpec{Rational::parse(text), Rational(0), 1};
  std::size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw ConfigError("grid must be 'value' or 'start:step:end': " + text);
  GridSpec g;
  g.start = Rational::parse(text.substr(0, c1));
  g.step = Rational::parse(text.substr(c1 + 1, c2 - c1 - 1));
  Rational end = Rational::parse(text.substr(c2 + 1));
  if (!(g.step > Rational(0)))
    throw ConfigError("grid step must be positive: " + text);
  if (end < g.start) throw ConfigError("grid end precedes start: " + text);
  Rational span = (end - g.start) / g.step;
  long long n = span.num() / span.den();  // floor for nonnegative span
  g.count = static_cast<int>(n) + 1;
  return g;
}

std::optional<exact::LinearMarket> realize_market(Regime regime,
                                                  const Rational& ratio,
                                                  const Rational& f,
                                                  const Rational& gamma,
                                                  const Rational& p_high) {
  const Rational zero(0), one(1), two(2);
  if (!(f > zero && f < one) || !(gamma > zero && gamma < one) ||
      !(p_high > zero))
    return std::nullopt;
  exact::LinearMarket m;
  m.gamma = gamma;
  m.p_high = p_high;
  m.p_low = f * p_high;

  switch (regime) {
    case Regime::Mixed: {
      // rho = c(p_H)/w(gamma p_L) is attainable in a strictly mixed market
      // iff rho_c < rho < 1/f. The demand intercept keeps rho_c at most
      // rho/2; the supply slope then hits rho on the nose.
      const Rational& rho = ratio;
      if (!(rho > zero) || !(rho * f < one)) return std::nullopt;
      Rational delta = detail::tmin(rho * (one - f) / two, Rational(1, 2));
      m.dem_intercept = p_high * (one + delta);
      m.dem_slope = one;
      Rational c_ph = m.dem_intercept - p_high;
      m.sup_intercept = zero;
      m.sup_slope = c_ph / (rho * gamma * m.p_low);
      return m;
    }
    case Regime::SupplyLimited: {
      // Affine supply w(p) = p + d realizes any rho_w in (0,1); the demand
      // intercept is then pushed high enough that p_bal lands strictly
      // above p_high (at p_high (2+gamma)/(1+gamma)).
      const Rational& rho_w = ratio;
      if (!(rho_w > zero && rho_w < one)) return std::nullopt;
      m.sup_slope = one;
      m.sup_intercept = gamma * p_high * (rho_w - f) / (one - rho_w);
      Rational w_gph = gamma * p_high + m.sup_intercept;
      m.dem_slope = one;
      m.dem_intercept = two * p_high + w_gph;
      return m;
    }
    case Regime::DemandLimited: {
      // Demand intercept realizes rho_c; a steep supply puts p_bal strictly
      // below p_low.
      const Rational& rho_c = ratio;
      if (!(rho_c > zero && rho_c < one)) return std::nullopt;
      m.dem_slope = one;
      m.dem_intercept = (p_high - rho_c * m.p_low) / (one - rho_c);
      Rational c_pl = m.dem_intercept - m.p_low;
      m.sup_intercept = zero;
      m.sup_slope = c_pl / (gamma * m.p_low) + one;
      return m;
    }
  }
  return std::nullopt;
}

MarketConfig to_market_config(const exact::LinearMarket& m) {
  Curve demand = Curve::linear(m.dem_intercept.to_double(),
                               m.dem_slope.to_double(), Direction::Decreasing);
  Curve supply = Curve::linear(m.sup_intercept.to_double(),
                               m.sup_slope.to_double(), Direction::Increasing);
  return MarketConfig(demand, supply, m.gamma.to_double(),
                      m.p_low.to_double(), m.p_high.to_double());
}

namespace {

RegionRecord make_error_record(Regime regime, Objective objective,
                               const Rational& ratio, const Rational& f,
                               const std::string& why) {
  RegionRecord rec;
  rec.realizable = false;
  rec.regime_label = "unrealizable";
  rec.objective = objective;
  rec.f = f.to_double();
  switch (regime) {
    case Regime::Mixed: rec.rho = ratio.to_double(); break;
    case Regime::SupplyLimited: rec.rho_w = ratio.to_double(); break;
    case Regime::DemandLimited: rec.rho_c = ratio.to_double(); break;
  }
  rec.note = why;
  return rec;
}

}  // namespace

std::vector<RegionRecord> run_sweep(const SweepSpec& spec) {
  std::vector<RegionRecord> records;
  std::vector<Objective> objectives;
  if (spec.objectives != SweepObjectives::Revenue)
    objectives.push_back(Objective::Throughput);
  if (spec.objectives != SweepObjectives::Throughput)
    objectives.push_back(Objective::Revenue);

  for (const Rational& ratio : spec.ratio_grid.values()) {
    for (const Rational& f : spec.f_grid.values()) {
      auto market =
          realize_market(spec.regime, ratio, f, spec.gamma, spec.p_high);
      if (!market) {
        for (Objective obj : objectives)
          records.push_back(make_error_record(
              spec.regime, obj, ratio, f,
              "no market in this regime attains the requested ratio"));
        continue;
      }
      MarketConfig cfg = to_market_config(*market);
      if (cfg.regime() != spec.regime) {
        for (Objective obj : objectives)
          records.push_back(make_error_record(spec.regime, obj, ratio, f,
                                              "realized market fell in the " +
                                                  to_string(cfg.regime()) +
                                                  " regime"));
        continue;
      }
      DerivedRatios ratios = derived_ratios(cfg);
      for (const Rational& beta : spec.beta_grid.values()) {
        double beta_d = beta.to_double();
        LoyaltyModel loyalty = LoyaltyModel::fixed(beta_d);
        PayoffMatrix tm = throughput_payoffs(cfg, loyalty);
        for (Objective obj : objectives) {
          PayoffMatrix pm = obj == Objective::Throughput
                                ? tm
                                : revenue_payoffs(cfg, loyalty);
          NESet ne = pure_nash(pm, default_ne_eps(pm));
          NESet pred = predicted_ne(obj, cfg.regime(), ratios, beta_d);

          RegionRecord rec;
          rec.beta = beta_d;
          rec.rho = ratios.rho;
          rec.f = ratios.f;
          rec.rho_w = ratios.rho_w;
          rec.rho_c = ratios.rho_c;
          rec.regime_label = to_string(cfg.regime());
          rec.objective = obj;
          rec.ne_enum = ne.member;
          rec.ne_pred = pred.member;
          rec.agree = ne == pred;
          if (!rec.agree) {
            // Floating point lost a boundary; settle it exactly.
            exact::Adjudication adj =
                exact::adjudicate_fixed(*market, beta, obj);
            rec.adjudicated = true;
            rec.ne_enum = adj.enumerated.member;
            rec.ne_pred = adj.predicted.member;
            rec.agree = adj.agreed();
            rec.note = rec.agree ? "boundary tie settled exactly"
                                 : "exact enumeration and prediction differ";
          }
          records.push_back(rec);
        }
      }
    }
  }
  return records;
}

std::string to_csv(const std::vector<RegionRecord>& records) {
  std::ostringstream os;
  os << "beta,rho,f,rho_w,rho_c,regime,objective,"
        "ne_LL_enum,ne_LH_enum,ne_HL_enum,ne_HH_enum,"
        "ne_LL_pred,ne_LH_pred,ne_HL_pred,ne_HH_pred,agree\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
  };
  for (const RegionRecord& r : records) {
    num(r.beta);
    os << ',';
    num(r.rho);
    os << ',';
    num(r.f);
    os << ',';
    num(r.rho_w);
    os << ',';
    num(r.rho_c);
    os << ',' << r.regime_label << ',' << to_string(r.objective);
    for (int i = 0; i < 4; ++i) os << ',' << (r.ne_enum[i] ? 1 : 0);
    for (int i = 0; i < 4; ++i) os << ',' << (r.ne_pred[i] ? 1 : 0);
    os << ',' << (r.agree ? 1 : 0) << '\n';
  }
  return os.str();
}

void write_csv(const std::vector<RegionRecord>& records,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << to_csv(records);
}

}  // namespace duopoly
