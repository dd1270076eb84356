#include "fracsemi/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "fracsemi/errors.hpp"

namespace fracsemi {

GaussLegendreRule GaussLegendreRule::make(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double GaussLegendreRule::integrate(const std::function<double(double)>& f, double a,
                                    double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = mid + half * nodes[i];
    const double y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "non-finite integrand sample at x = " << x;
      throw NonFiniteError(msg.str());
    }
    sum += weights[i] * y;
  }
  return half * sum;
}

double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_depth) {
  static const GaussLegendreRule rule = GaussLegendreRule::make(10);
  if (a == b) return 0.0;
  const double total_length = b - a;

  struct Panel {
    double lo, hi, estimate;
    int depth;
  };
  std::vector<Panel> stack;
  stack.push_back({a, b, rule.integrate(f, a, b), 0});
  double result = 0.0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const double left = rule.integrate(f, p.lo, mid);
    const double right = rule.integrate(f, mid, p.hi);
    const double refined = left + right;
    const double share = abs_tol * (p.hi - p.lo) / total_length;
    if (std::abs(refined - p.estimate) <= share || p.depth >= max_depth) {
      result += refined;
      continue;
    }
    // Right first so the left panel is processed next (left-to-right summation).
    stack.push_back({mid, p.hi, right, p.depth + 1});
    stack.push_back({p.lo, mid, left, p.depth + 1});
  }
  return result;
}

}  // namespace fracsemi
