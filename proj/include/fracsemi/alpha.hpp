#pragma once

#include <cmath>
#include <string>

#include "fracsemi/errors.hpp"

namespace fracsemi {

/// Fractional order, always in (0, 1].
class AlphaOrder {
 public:
  explicit AlphaOrder(double value) : value_(value) {
    if (!(value > 0.0 && value <= 1.0)) {
      throw DomainError("alpha must be in (0,1], got " + std::to_string(value));
    }
  }

  double value() const noexcept { return value_; }

  /// Fractional clock t^alpha / alpha. Exact identity at alpha = 1.
  double clock(double t) const { return std::pow(t, value_) / value_; }

  /// Inverse of clock(): the time t with t^alpha / alpha = tau.
  double inverse_clock(double tau) const {
    return std::pow(value_ * tau, 1.0 / value_);
  }

  friend bool operator==(AlphaOrder, AlphaOrder) = default;

 private:
  double value_;
};

}  // namespace fracsemi
