#ifndef DUOPOLY_CURVE_HPP
#define DUOPOLY_CURVE_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace duopoly {

enum class Direction { Decreasing, Increasing };

std::string to_string(Direction d);

// A parametric monotone quantity-of-price function. Three families:
//
//   Linear       q(p) = intercept +/- slope * p   (sign from direction)
//   Exponential  q(p) = scale * exp(+/- rate * p)
//   Table        piecewise-linear interpolation of sorted (price, quantity)
//                knots, strictly monotone in the declared direction
//
// Evaluation itself is a pure formula; monotonicity and nonnegativity over a
// working interval are checked by validate()/validate_nonnegative(), which
// the market configuration invokes at construction.
class Curve {
 public:
  struct Linear {
    double intercept;  // quantity at price 0
    double slope;      // quantity per unit price, > 0
  };
  struct Exponential {
    double scale;  // quantity at price 0, > 0
    double rate;   // per unit price, > 0
  };
  struct Table {
    std::vector<std::pair<double, double>> knots;  // (price, quantity)
  };

  static Curve linear(double intercept, double slope, Direction dir);
  static Curve exponential(double scale, double rate, Direction dir);
  static Curve table(std::vector<std::pair<double, double>> knots,
                     Direction dir);

  double eval(double price) const;
  double operator()(double price) const { return eval(price); }

  Direction direction() const { return direction_; }

  // Table curves can only interpolate inside their knot span.
  bool covers(double lo, double hi) const;

  // Samples at least `samples` points on [lo, hi] and checks strict
  // monotonicity in the declared direction.
  void validate(double lo, double hi, int samples = 65) const;

  // Same sampling, checks eval >= 0 on [lo, hi].
  void validate_nonnegative(double lo, double hi, int samples = 65) const;

  // A copy with all quantities multiplied by k > 0 (same monotonicity).
  Curve scaled(double k) const;

  std::string describe() const;

 private:
  Curve(std::variant<Linear, Exponential, Table> family, Direction dir)
      : family_(std::move(family)), direction_(dir) {}

  std::variant<Linear, Exponential, Table> family_;
  Direction direction_;
};

}  // namespace duopoly

#endif  // DUOPOLY_CURVE_HPP
