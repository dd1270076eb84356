#include "fracsemi/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsemi/semigroup.hpp"

namespace fracsemi {

CauchyProblem::CauchyProblem(DenseMatrix generator, StateVector initial, AlphaOrder alpha,
                             double horizon)
    : generator_(std::move(generator)), initial_(std::move(initial)), alpha_(alpha),
      horizon_(horizon) {
  if (initial_.size() != generator_.size()) {
    std::ostringstream msg;
    msg << "initial state has dimension " << initial_.size() << " but generator is "
        << generator_.size() << "x" << generator_.size();
    throw DimensionError(msg.str());
  }
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw DomainError("horizon must be a finite positive number");
  }
  if (!generator_.all_finite()) throw NonFiniteError("generator entries must be finite");
}

Trajectory solve_exact(const CauchyProblem& problem, const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0) {
    throw DomainError("sample times must start at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw DomainError("sample times must increase strictly");
  }
  if (times.back() > problem.horizon()) throw DomainError("sample time exceeds the horizon");

  const AlphaSemigroup semigroup(problem.generator(), problem.alpha());
  Trajectory out;
  out.times = times;
  out.states.reserve(times.size());
  out.states.push_back(problem.initial());
  for (std::size_t k = 1; k < times.size(); ++k) {
    out.states.push_back(semigroup.apply(times[k], problem.initial()));
  }
  return out;
}

Trajectory solve_numeric(const CauchyProblem& problem, int n_steps) {
  if (n_steps < 1) throw DomainError("n_steps must be >= 1");
  const DenseMatrix& a = problem.generator();
  const AlphaOrder alpha = problem.alpha();
  const double tau_max = alpha.clock(problem.horizon());
  const double dtau = tau_max / n_steps;

  Trajectory out;
  out.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.times.push_back(0.0);
  out.states.push_back(problem.initial());

  StateVector u = problem.initial();
  const std::size_t n = u.size();
  StateVector stage(n);
  for (int k = 1; k <= n_steps; ++k) {
    const StateVector k1 = a * u;
    for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dtau * k1[i];
    const StateVector k2 = a * stage;
    for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + 0.5 * dtau * k2[i];
    const StateVector k3 = a * stage;
    for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + dtau * k3[i];
    const StateVector k4 = a * stage;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] += dtau / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(u[i])) {
        std::ostringstream msg;
        msg << "state overflowed at step " << k << " of " << n_steps;
        throw NonFiniteError(msg.str());
      }
    }
    const double t =
        k == n_steps ? problem.horizon() : alpha.inverse_clock(k * tau_max / n_steps);
    out.times.push_back(t);
    out.states.push_back(u);
  }
  return out;
}

namespace {

// Derivative of the cubic through four (t, u) samples, evaluated componentwise in
// Lagrange form.
StateVector lagrange_cubic_slope(const std::vector<double>& times,
                                 const std::vector<StateVector>& states, std::size_t first,
                                 double t) {
  StateVector out(states[first].size(), 0.0);
  for (std::size_t j = first; j < first + 4; ++j) {
    double denom = 1.0;
    for (std::size_t m = first; m < first + 4; ++m) {
      if (m != j) denom *= times[j] - times[m];
    }
    double numer = 0.0;
    for (std::size_t skip = first; skip < first + 4; ++skip) {
      if (skip == j) continue;
      double term = 1.0;
      for (std::size_t m = first; m < first + 4; ++m) {
        if (m != j && m != skip) term *= t - times[m];
      }
      numer += term;
    }
    const double slope = numer / denom;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += slope * states[j][i];
  }
  return out;
}

}  // namespace

double residual_check(const CauchyProblem& problem, const Trajectory& trajectory) {
  if (trajectory.times.size() != trajectory.states.size()) {
    throw DimensionError("trajectory times and states differ in length");
  }
  std::vector<double> times;
  std::vector<StateVector> states;
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    if (trajectory.times[k] > 0.0) {
      if (trajectory.states[k].size() != problem.generator().size()) {
        throw DimensionError("trajectory state does not match generator");
      }
      times.push_back(trajectory.times[k]);
      states.push_back(trajectory.states[k]);
    }
  }
  if (times.size() < 7) {
    std::ostringstream msg;
    msg << "residual check needs at least 5 interior samples, got "
        << (times.size() >= 2 ? times.size() - 2 : 0);
    throw InsufficientSamplesError(msg.str());
  }

  double worst = 0.0;
  for (std::size_t q = 1; q + 1 < times.size(); ++q) {
    // Window q-1..q+2 or q-2..q+1, whichever extra point lies closer to t_q.
    std::size_t first = q - 1;
    const bool has_left = q >= 2;
    const bool has_right = q + 2 < times.size();
    if (!has_right || (has_left && times[q] - times[q - 2] < times[q + 2] - times[q])) {
      first = q - 2;
    }
    StateVector derivative = lagrange_cubic_slope(times, states, first, times[q]);
    const double weight = std::pow(times[q], 1.0 - problem.alpha().value());
    for (double& v : derivative) v *= weight;
    const StateVector rhs = problem.generator() * states[q];
    worst = std::max(worst, euclidean_norm(subtract(derivative, rhs)));
  }
  return worst;
}

}  // namespace fracsemi
