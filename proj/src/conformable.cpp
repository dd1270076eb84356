#include "fracsemi/conformable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracsemi/quadrature.hpp"

namespace fracsemi {
namespace {

constexpr double kDomainFraction = 1.0 / 64.0;
constexpr int kRichardsonLevels = 4;
constexpr double kAitkenMaxRatio = 0.98;

void require_finite(const std::vector<double>& values, double t) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "function returned a non-finite value at t = " << t;
      throw NonFiniteError(msg.str());
    }
  }
}

double step_for(double t, const Domain& domain) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << "conformable derivative requires t > 0, got t = " << t;
    throw DomainError(msg.str());
  }
  if (!(t > domain.lo && t < domain.hi)) {
    std::ostringstream msg;
    msg << "difference stencil at t = " << t << " exits the domain [" << domain.lo << ", "
        << domain.hi << "]";
    throw DomainError(msg.str());
  }
  double h = default_step(t);
  h = std::min(h, (t - domain.lo) * kDomainFraction);
  h = std::min(h, (domain.hi - t) * kDomainFraction);
  // Make t + h exactly representable relative to t.
  volatile double shifted = t + h;
  return shifted - t;
}

template <class Eval>
VectorDerivativeResult richardson_derivative(const Eval& eval, double t, AlphaOrder alpha,
                                             const Domain& domain) {
  const double h = step_for(t, domain);
  const double h2 = 0.5 * h;

  auto sample = [&](double x) {
    auto v = eval(x);
    require_finite(v, x);
    return v;
  };
  const auto fp = sample(t + h);
  const auto fm = sample(t - h);
  const auto fp2 = sample(t + h2);
  const auto fm2 = sample(t - h2);

  const double weight = std::pow(t, 1.0 - alpha.value());
  VectorDerivativeResult out;
  out.value.resize(fp.size());
  out.step_used = h2;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    const double coarse = (fp[i] - fm[i]) / (2.0 * h);
    const double fine = (fp2[i] - fm2[i]) / (2.0 * h2);
    const double extrapolated = fine + (fine - coarse) / 3.0;
    out.value[i] = weight * extrapolated;
    out.estimated_error = std::max(out.estimated_error, weight * std::abs(fine - coarse) / 3.0);
  }
  return out;
}

using Row = std::vector<double>;

double cauchy_increment(const Row& current, const Row& previous) {
  double worst = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    const double scale = std::max(1.0, std::abs(current[i]));
    worst = std::max(worst, std::abs(current[i] - previous[i]) / scale);
  }
  return worst;
}

double abs_increment(const Row& current, const Row& previous) {
  double worst = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    worst = std::max(worst, std::abs(current[i] - previous[i]));
  }
  return worst;
}

// One guarded Aitken step on the last three entries of a sequence. Components whose
// increments are not contracting are passed through, so divergent sequences stay divergent.
Row aitken(const Row& x0, const Row& x1, const Row& x2) {
  Row out = x2;
  for (std::size_t i = 0; i < x2.size(); ++i) {
    const double d0 = x1[i] - x0[i];
    const double d1 = x2[i] - x1[i];
    if (d0 == 0.0) continue;
    const double ratio = d1 / d0;
    if (std::abs(ratio) < kAitkenMaxRatio) out[i] = x2[i] + d1 * ratio / (1.0 - ratio);
  }
  return out;
}

// Limit detection along t_k = b 2^{-k}. Three sequences are tracked and tested in order:
// a Richardson tableau assuming errors in powers of t^alpha (the natural expansion for
// functions of the fractional clock t^alpha / alpha), a twice-iterated guarded Aitken
// sequence for other error exponents, and the raw sequence.
template <class Eval>
VectorDerivativeResult limit_at_zero(const Eval& eval, AlphaOrder alpha, const Domain& domain,
                                     const LimitOptions& options) {
  if (domain.lo != 0.0) {
    throw DomainError("limit at t = 0 requires a domain starting at 0");
  }
  const double b = std::min(1.0, domain.width()) / 2.0;
  const double ratio = std::pow(2.0, -alpha.value());

  std::vector<Row> raw;
  std::vector<Row> aitken1;
  std::vector<Row> aitken2;
  Row tableau_prev;
  std::vector<Row> tableau_row_prev;
  double last_increment = std::numeric_limits<double>::infinity();

  for (int k = 0; k <= options.max_terms; ++k) {
    const double t = b * std::ldexp(1.0, -k);
    VectorDerivativeResult d = richardson_derivative(eval, t, alpha, domain);
    raw.push_back(d.value);

    std::vector<Row> row;
    row.push_back(d.value);
    const int levels = std::min(k, kRichardsonLevels);
    for (int m = 1; m <= levels; ++m) {
      const double rm = std::pow(ratio, m);
      Row next(d.value.size());
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = (row[m - 1][i] - rm * tableau_row_prev[m - 1][i]) / (1.0 - rm);
      }
      row.push_back(std::move(next));
    }

    if (raw.size() >= 3) {
      aitken1.push_back(aitken(raw[raw.size() - 3], raw[raw.size() - 2], raw.back()));
    }
    if (aitken1.size() >= 3) {
      aitken2.push_back(
          aitken(aitken1[aitken1.size() - 3], aitken1[aitken1.size() - 2], aitken1.back()));
    }

    if (k >= 3) {
      struct Candidate {
        const Row* current;
        const Row* previous;
      };
      const int m = std::min(k - 1, kRichardsonLevels);
      std::vector<Candidate> candidates;
      candidates.push_back({&row[m], &tableau_row_prev[m]});
      if (aitken2.size() >= 2) {
        candidates.push_back({&aitken2.back(), &aitken2[aitken2.size() - 2]});
      } else if (aitken1.size() >= 2) {
        candidates.push_back({&aitken1.back(), &aitken1[aitken1.size() - 2]});
      }
      candidates.push_back({&raw.back(), &raw[raw.size() - 2]});

      for (const Candidate& c : candidates) {
        const double inc = cauchy_increment(*c.current, *c.previous);
        last_increment = std::min(last_increment, inc);
        if (inc <= options.tolerance) {
          VectorDerivativeResult out;
          out.value = *c.current;
          out.step_used = d.step_used;
          out.estimated_error = abs_increment(*c.current, *c.previous);
          return out;
        }
      }
    }
    tableau_row_prev = std::move(row);
  }
  std::ostringstream msg;
  msg << "no limit as t -> 0+ after " << options.max_terms + 1
      << " terms (smallest relative increment " << last_increment << ", tolerance "
      << options.tolerance << ")";
  throw NoLimitError(msg.str());
}

DerivativeResult to_scalar(VectorDerivativeResult r) {
  return {r.value.front(), r.step_used, r.estimated_error};
}

auto scalar_eval(const FunctionHandle& f) {
  return [&f](double x) { return std::vector<double>{f(x)}; };
}

}  // namespace

double default_step(double t) {
  return std::max(t, 1.0) * std::cbrt(std::numeric_limits<double>::epsilon());
}

DerivativeResult conformable_derivative(const FunctionHandle& f, double t, AlphaOrder alpha) {
  return to_scalar(richardson_derivative(scalar_eval(f), t, alpha, f.domain()));
}

VectorDerivativeResult conformable_derivative(const VectorFunction& f, double t,
                                              AlphaOrder alpha) {
  return richardson_derivative(f, t, alpha, f.domain());
}

double definitional_quotient(const FunctionHandle& f, double t, AlphaOrder alpha, double eps) {
  if (!(t > 0.0)) throw DomainError("conformable derivative requires t > 0");
  if (eps <= 0.0) eps = default_step(t);
  const double shifted = t + eps * std::pow(t, 1.0 - alpha.value());
  if (!f.domain().contains(t) || !f.domain().contains(shifted)) {
    throw DomainError("definitional quotient leaves the function domain");
  }
  const double a = f(shifted);
  const double b = f(t);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw NonFiniteError("function returned a non-finite value");
  }
  return (a - b) / eps;
}

DerivativeResult conformable_derivative_at_zero(const FunctionHandle& f, AlphaOrder alpha,
                                                const LimitOptions& options) {
  return to_scalar(limit_at_zero(scalar_eval(f), alpha, f.domain(), options));
}

VectorDerivativeResult conformable_derivative_at_zero(const VectorFunction& f,
                                                      AlphaOrder alpha,
                                                      const LimitOptions& options) {
  return limit_at_zero(f, alpha, f.domain(), options);
}

double fractional_integral(const FunctionHandle& f, double a, double t, AlphaOrder alpha,
                           double abs_tol) {
  if (!(a >= 0.0)) throw DomainError("integral lower limit must be >= 0");
  if (!(t > a)) {
    std::ostringstream msg;
    msg << "integral requires t > a, got a = " << a << ", t = " << t;
    throw DomainError(msg.str());
  }
  if (!f.domain().contains(a) || !f.domain().contains(t)) {
    throw DomainError("integration interval leaves the function domain");
  }
  const double p = alpha.value();
  const double inv = 1.0 / p;
  // x = u^{1/alpha} turns x^{alpha-1} dx into du / alpha.
  auto integrand = [&](double u) {
    const double x = std::clamp(std::pow(u, inv), a, t);
    return f(x);
  };
  const double lo = std::pow(a, p);
  const double hi = std::pow(t, p);
  return adaptive_gauss_legendre(integrand, lo, hi, abs_tol * p) / p;
}

double ref_exp_alpha(double t, AlphaOrder alpha) { return std::exp(alpha.clock(t)); }
double ref_sin_alpha(double t, AlphaOrder alpha) { return std::sin(alpha.clock(t)); }
double ref_cos_alpha(double t, AlphaOrder alpha) { return std::cos(alpha.clock(t)); }

}  // namespace fracsemi
