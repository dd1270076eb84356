#pragma once

#include <vector>

#include "fracsemi/alpha.hpp"
#include "fracsemi/function.hpp"

/// Conformable fractional derivative and integral of order alpha in (0, 1].
///
/// For t > 0 the derivative is T_alpha(f)(t) = lim (f(t + eps t^{1-alpha}) - f(t)) / eps,
/// which for differentiable f equals t^{1-alpha} f'(t). That identity is what
/// conformable_derivative evaluates, using central differences with two-level
/// Richardson extrapolation. The value at t = 0 is defined as the one-sided
/// limit t -> 0+ and is detected numerically by conformable_derivative_at_zero.
///
/// The integral I_alpha^a(f)(t) = int_a^t f(x) x^{alpha-1} dx is computed after
/// the substitution u = x^alpha, which removes the weight singularity at x = 0.
namespace fracsemi {

struct DerivativeResult {
  double value = 0.0;
  double step_used = 0.0;        ///< final difference step
  double estimated_error = 0.0;  ///< Richardson (or limit-sequence) residual, >= 0
};

struct VectorDerivativeResult {
  std::vector<double> value;
  double step_used = 0.0;
  double estimated_error = 0.0;  ///< max over components
};

/// Base difference step max(t, 1) * eps^{1/3}.
double default_step(double t);

/// t^{1-alpha} f'(t). Requires t strictly inside f's domain and t > 0; the step
/// shrinks to at most 1/64 of the distance to the nearest domain endpoint.
/// Throws DomainError, NonFiniteError.
DerivativeResult conformable_derivative(const FunctionHandle& f, double t, AlphaOrder alpha);
VectorDerivativeResult conformable_derivative(const VectorFunction& f, double t,
                                              AlphaOrder alpha);

/// Raw quotient (f(t + eps t^{1-alpha}) - f(t)) / eps, for cross-checking. eps <= 0
/// selects default_step(t).
double definitional_quotient(const FunctionHandle& f, double t, AlphaOrder alpha,
                             double eps = 0.0);

struct LimitOptions {
  int max_terms = 40;       ///< k_max; the sequence has max_terms + 1 entries
  double tolerance = 1e-7;  ///< Cauchy tolerance, relative to max(1, |value|)
};

/// lim_{t->0+} T_alpha(f)(t), sampled along t_k = b 2^{-k} with
/// b = min(1, domain width) / 2. The domain must start at 0.
/// Throws NoLimitError when no extrapolated sequence passes the Cauchy test.
DerivativeResult conformable_derivative_at_zero(const FunctionHandle& f, AlphaOrder alpha,
                                                const LimitOptions& options = {});
VectorDerivativeResult conformable_derivative_at_zero(const VectorFunction& f,
                                                      AlphaOrder alpha,
                                                      const LimitOptions& options = {});

/// I_alpha^a(f)(t). Throws DomainError if a < 0, t <= a or [a, t] leaves f's domain;
/// NonFiniteError on non-finite integrand samples.
double fractional_integral(const FunctionHandle& f, double a, double t, AlphaOrder alpha,
                           double abs_tol = 1e-12);

/// e^{t^alpha / alpha}
double ref_exp_alpha(double t, AlphaOrder alpha);
/// sin(t^alpha / alpha)
double ref_sin_alpha(double t, AlphaOrder alpha);
/// cos(t^alpha / alpha)
double ref_cos_alpha(double t, AlphaOrder alpha);

}  // namespace fracsemi
