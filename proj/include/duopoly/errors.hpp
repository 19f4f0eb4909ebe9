#ifndef DUOPOLY_ERRORS_HPP
#define DUOPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace duopoly {

// Invalid market description: bad curve parameters, bad price ladder,
// missing clearing-price bracket, division by a vanishing quantity.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Operation called with arguments outside its domain (price off the
// ladder or outside the working interval, beta out of range, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A model assumption required by an operation does not hold.
struct AssumptionError : DomainError {
  explicit AssumptionError(const std::string& what) : DomainError(what) {}
};

// Join utility of a worker or customer is not strictly positive at the
// price in use.
struct NonPositiveJoinUtility : AssumptionError {
  enum class Side { Worker, Customer };

  NonPositiveJoinUtility(Side side, int platform, double margin)
      : AssumptionError(describe(side, platform, margin)),
        side(side),
        platform(platform),
        margin(margin) {}

  Side side;
  int platform;  // 1 or 2
  double margin; // the non-positive utility margin

 private:
  static std::string describe(Side side, int platform, double margin) {
    std::string who = side == Side::Worker ? "worker" : "customer";
    return "join utility of a " + who + " at platform " +
           std::to_string(platform) +
           " is not strictly positive (margin = " + std::to_string(margin) +
           ")";
  }
};

}  // namespace duopoly

#endif  // DUOPOLY_ERRORS_HPP
