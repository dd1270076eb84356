#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracsemi {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Builds an n-point rule by Newton iteration on P_n.
  static GaussLegendreRule make(std::size_t n);

  /// Applies the rule on [a, b].
  double integrate(const std::function<double(double)>& f, double a, double b) const;
};

/// Composite Gauss-Legendre quadrature with adaptive bisection. A panel is
/// accepted when the two-half estimate agrees with the whole-panel estimate
/// within its share of abs_tol (proportional to its length).
/// Throws NonFiniteError on a non-finite sample.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double abs_tol = 1e-12, int max_depth = 50);

}  // namespace fracsemi
