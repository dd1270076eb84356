#pragma once

#include <cstddef>
#include <vector>

#include "fracsemi/alpha.hpp"
#include "fracsemi/function.hpp"

namespace fracsemi {

/// Uniform grid on [0, x_max] with n_points >= 3 nodes.
class Grid1D {
 public:
  Grid1D(double x_max, std::size_t n_points);

  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return x_max_ / static_cast<double>(n_points_ - 1); }
  /// i-th node; the last node is exactly x_max.
  double point(std::size_t i) const noexcept {
    return x_max_ * static_cast<double>(i) / static_cast<double>(n_points_ - 1);
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_max_;
  std::size_t n_points_;
};

/// Finite samples on a Grid1D.
class GridFunction {
 public:
  /// Throws DimensionError on length mismatch, NonFiniteError on non-finite values.
  GridFunction(Grid1D grid, std::vector<double> values);

  const Grid1D& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double sup_norm() const noexcept;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// d^alpha u / dt^alpha = du/dx on [0, x_max] x [0, horizon], u(x, 0) = g(x).
class TransportProblem {
 public:
  /// Throws DomainError unless g is evaluable on [0, x_max + horizon^alpha / alpha].
  TransportProblem(FunctionHandle profile, AlphaOrder alpha, Grid1D grid, double horizon);

  const FunctionHandle& profile() const noexcept { return profile_; }
  AlphaOrder alpha() const noexcept { return alpha_; }
  const Grid1D& grid() const noexcept { return grid_; }
  double horizon() const noexcept { return horizon_; }
  /// x_max + horizon^alpha / alpha
  double characteristic_reach() const { return grid_.x_max() + alpha_.clock(horizon_); }

 private:
  FunctionHandle profile_;
  AlphaOrder alpha_;
  Grid1D grid_;
  double horizon_;
};

/// (T(t) g)(x_i) = g(x_i + t^alpha / alpha). Bitwise g(x_i) at t = 0.
/// Throws DomainError if the shifted grid leaves g's domain.
GridFunction translation_apply(const FunctionHandle& g, double t, AlphaOrder alpha,
                               const Grid1D& grid);

/// The shifted profile x -> g(x + t^alpha / alpha) as a function in its own right.
FunctionHandle translated(const FunctionHandle& g, double t, AlphaOrder alpha);

/// f' by second-order central differences inside, one-sided second-order at the ends.
GridFunction translation_generator_apply(const GridFunction& f);

/// u(x, t) = g(x + t^alpha / alpha) on the grid. Throws DomainError unless 0 <= t <= horizon.
GridFunction solve_transport_exact(const TransportProblem& problem, double t);

/// First-order upwind in tau = t^alpha / alpha with exact inflow g(x_max + tau) at the
/// right boundary. Throws CFLViolationError if dtau > dx.
GridFunction solve_transport_fd(const TransportProblem& problem, double t, int n_steps);

/// max over interior nodes of | D^alpha_t u(x_i, t) - D_x u(x_i, t) | for the exact
/// solution. Throws DomainError unless 0 < t <= horizon.
double pde_residual(const TransportProblem& problem, double t);

}  // namespace fracsemi
