#pragma once

#include <vector>

#include "fracsemi/alpha.hpp"
#include "fracsemi/matrix.hpp"

namespace fracsemi {

/// u^(alpha)(t) = A u(t) for t > 0, u(0) = u0, on [0, horizon].
class CauchyProblem {
 public:
  /// Throws DimensionError if u0 does not match A, DomainError unless horizon > 0.
  CauchyProblem(DenseMatrix generator, StateVector initial, AlphaOrder alpha, double horizon);

  const DenseMatrix& generator() const noexcept { return generator_; }
  const StateVector& initial() const noexcept { return initial_; }
  AlphaOrder alpha() const noexcept { return alpha_; }
  double horizon() const noexcept { return horizon_; }

 private:
  DenseMatrix generator_;
  StateVector initial_;
  AlphaOrder alpha_;
  double horizon_;
};

struct Trajectory {
  std::vector<double> times;  ///< strictly increasing, times[0] == 0
  std::vector<StateVector> states;
};

/// u(t_k) = T(t_k) u0. The times must start at 0, increase strictly and stay within
/// the horizon (DomainError otherwise).
Trajectory solve_exact(const CauchyProblem& problem, const std::vector<double>& times);

/// Classical RK4 for du/dtau = A u on a uniform grid over [0, horizon^alpha / alpha];
/// samples are reported at t_k = (alpha tau_k)^{1/alpha}. Throws NonFiniteError on overflow.
Trajectory solve_numeric(const CauchyProblem& problem, int n_steps);

/// max over interior positive sample times of || D^alpha u(t) - A u(t) ||_2, where the
/// derivative is that of the cubic through four nearby positive-time samples, times t^{1-alpha}.
/// The t = 0 sample is excluded. Needs at least 5 interior samples
/// (InsufficientSamplesError).
double residual_check(const CauchyProblem& problem, const Trajectory& trajectory);

}  // namespace fracsemi
