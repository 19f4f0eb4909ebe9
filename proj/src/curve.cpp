#include "duopoly/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "duopoly/errors.hpp"

namespace duopoly {

std::string to_string(Direction d) {
  return d == Direction::Decreasing ? "decreasing" : "increasing";
}

Curve Curve::linear(double intercept, double slope, Direction dir) {
  if (!(slope > 0.0) || !std::isfinite(slope) || !std::isfinite(intercept))
    throw ConfigError("linear curve needs a finite positive slope magnitude");
  return Curve(Linear{intercept, slope}, dir);
}

Curve Curve::exponential(double scale, double rate, Direction dir) {
  if (!(scale > 0.0) || !(rate > 0.0))
    throw ConfigError("exponential curve needs positive scale and rate");
  return Curve(Exponential{scale, rate}, dir);
}

Curve Curve::table(std::vector<std::pair<double, double>> knots,
                   Direction dir) {
  if (knots.size() < 2)
    throw ConfigError("table curve needs at least two knots");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i - 1].first < knots[i].first))
      throw ConfigError("table curve knots must have strictly increasing "
                        "prices");
    bool ok = dir == Direction::Increasing
                  ? knots[i - 1].second < knots[i].second
                  : knots[i - 1].second > knots[i].second;
    if (!ok)
      throw ConfigError("table curve quantities are not strictly " +
                        to_string(dir) + " in price");
  }
  return Curve(Table{std::move(knots)}, dir);
}

double Curve::eval(double price) const {
  if (const auto* lin = std::get_if<Linear>(&family_)) {
    double signed_slope =
        direction_ == Direction::Decreasing ? -lin->slope : lin->slope;
    return lin->intercept + signed_slope * price;
  }
  if (const auto* exp = std::get_if<Exponential>(&family_)) {
    double signed_rate =
        direction_ == Direction::Decreasing ? -exp->rate : exp->rate;
    return exp->scale * std::exp(signed_rate * price);
  }
  const auto& knots = std::get<Table>(family_).knots;
  if (price < knots.front().first || price > knots.back().first)
    throw DomainError("price " + std::to_string(price) +
                      " outside table curve span [" +
                      std::to_string(knots.front().first) + ", " +
                      std::to_string(knots.back().first) + "]");
  auto hi = std::lower_bound(
      knots.begin(), knots.end(), price,
      [](const std::pair<double, double>& k, double p) { return k.first < p; });
  if (hi == knots.begin()) return hi->second;
  auto lo = std::prev(hi);
  if (hi == knots.end()) return lo->second;
  double t = (price - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

bool Curve::covers(double lo, double hi) const {
  if (const auto* tab = std::get_if<Table>(&family_))
    return tab->knots.front().first <= lo && hi <= tab->knots.back().first;
  return true;
}

void Curve::validate(double lo, double hi, int samples) const {
  if (!(lo < hi)) throw ConfigError("empty working interval for curve");
  if (!covers(lo, hi))
    throw ConfigError("table curve does not cover working interval [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  samples = std::max(samples, 65);
  double prev = eval(lo);
  for (int i = 1; i < samples; ++i) {
    double p = lo + (hi - lo) * i / (samples - 1);
    double q = eval(p);
    bool ok = direction_ == Direction::Increasing ? prev < q : prev > q;
    if (!ok)
      throw ConfigError("curve is not strictly " + to_string(direction_) +
                        " near price " + std::to_string(p));
    prev = q;
  }
}

void Curve::validate_nonnegative(double lo, double hi, int samples) const {
  if (!(lo <= hi)) throw ConfigError("empty working interval for curve");
  samples = std::max(samples, 65);
  for (int i = 0; i < samples; ++i) {
    double p = lo + (hi - lo) * i / (samples - 1);
    if (eval(p) < 0.0)
      throw ConfigError("curve is negative at price " + std::to_string(p));
  }
}

Curve Curve::scaled(double k) const {
  if (!(k > 0.0)) throw DomainError("curve scale factor must be positive");
  Curve out = *this;
  if (auto* lin = std::get_if<Linear>(&out.family_)) {
    lin->intercept *= k;
    lin->slope *= k;
  } else if (auto* exp = std::get_if<Exponential>(&out.family_)) {
    exp->scale *= k;
  } else {
    for (auto& knot : std::get<Table>(out.family_).knots) knot.second *= k;
  }
  return out;
}

std::string Curve::describe() const {
  std::ostringstream os;
  if (const auto* lin = std::get_if<Linear>(&family_)) {
    os << "linear(" << lin->intercept
       << (direction_ == Direction::Decreasing ? " - " : " + ") << lin->slope
       << "*p)";
  } else if (const auto* exp = std::get_if<Exponential>(&family_)) {
    os << "exponential(" << exp->scale << "*e^("
       << (direction_ == Direction::Decreasing ? "-" : "") << exp->rate
       << "*p))";
  } else {
    const auto& knots = std::get<Table>(family_).knots;
    os << "table(" << knots.size() << " knots, "
       << to_string(direction_) << ")";
  }
  return os.str();
}

}  // namespace duopoly
