#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "fracsemi/errors.hpp"

namespace fracsemi {

/// Closed interval [lo, hi] on which a function may be evaluated.
struct Domain {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
  double width() const noexcept { return hi - lo; }
};

/// Real-valued function of a nonnegative real with a declared domain.
/// Evaluation must be deterministic and re-entrant.
class FunctionHandle {
 public:
  using Fn = std::function<double(double)>;

  FunctionHandle(Fn fn, Domain domain = {}) : fn_(std::move(fn)), domain_(domain) {
    if (!(domain_.lo >= 0.0) || !(domain_.hi > domain_.lo)) {
      throw DomainError("function domain must satisfy 0 <= lo < hi");
    }
  }

  double operator()(double t) const { return fn_(t); }
  const Domain& domain() const noexcept { return domain_; }

 private:
  Fn fn_;
  Domain domain_;
};

/// Vector-valued counterpart of FunctionHandle; every call returns the same length.
class VectorFunction {
 public:
  using Fn = std::function<std::vector<double>(double)>;

  VectorFunction(Fn fn, Domain domain = {}) : fn_(std::move(fn)), domain_(domain) {
    if (!(domain_.lo >= 0.0) || !(domain_.hi > domain_.lo)) {
      throw DomainError("function domain must satisfy 0 <= lo < hi");
    }
  }

  std::vector<double> operator()(double t) const { return fn_(t); }
  const Domain& domain() const noexcept { return domain_; }

 private:
  Fn fn_;
  Domain domain_;
};

}  // namespace fracsemi
