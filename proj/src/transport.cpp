#include "fracsemi/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsemi/conformable.hpp"

namespace fracsemi {

Grid1D::Grid1D(double x_max, std::size_t n_points) : x_max_(x_max), n_points_(n_points) {
  if (!(x_max_ > 0.0) || !std::isfinite(x_max_)) throw DomainError("grid x_max must be > 0");
  if (n_points_ < 3) throw DomainError("grid needs at least 3 points");
}

GridFunction::GridFunction(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw DimensionError("values do not match grid size");
  for (double v : values_) {
    if (!std::isfinite(v)) throw NonFiniteError("grid function values must be finite");
  }
}

double GridFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

TransportProblem::TransportProblem(FunctionHandle profile, AlphaOrder alpha, Grid1D grid,
                                   double horizon)
    : profile_(std::move(profile)), alpha_(alpha), grid_(grid), horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw DomainError("horizon must be a finite positive number");
  }
  const Domain& d = profile_.domain();
  if (d.lo > 0.0 || d.hi < characteristic_reach()) {
    std::ostringstream msg;
    msg << "profile must be evaluable on [0, " << characteristic_reach() << "]";
    throw DomainError(msg.str());
  }
}

GridFunction translation_apply(const FunctionHandle& g, double t, AlphaOrder alpha,
                               const Grid1D& grid) {
  if (!(t >= 0.0)) throw DomainError("translation time must be >= 0");
  const double shift = t == 0.0 ? 0.0 : alpha.clock(t);
  if (!g.domain().contains(shift) || !g.domain().contains(grid.x_max() + shift)) {
    std::ostringstream msg;
    msg << "translation by " << shift << " leaves the profile domain";
    throw DomainError(msg.str());
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = shift == 0.0 ? g(grid.point(i)) : g(grid.point(i) + shift);
  }
  return GridFunction(grid, std::move(values));
}

FunctionHandle translated(const FunctionHandle& g, double t, AlphaOrder alpha) {
  if (!(t >= 0.0)) throw DomainError("translation time must be >= 0");
  const double shift = t == 0.0 ? 0.0 : alpha.clock(t);
  const Domain d = g.domain();
  if (d.hi <= shift) throw DomainError("translation leaves the profile domain");
  return FunctionHandle([g, shift](double x) { return g(x + shift); },
                        Domain{std::max(0.0, d.lo - shift), d.hi - shift});
}

GridFunction translation_generator_apply(const GridFunction& f) {
  const Grid1D& grid = f.grid();
  const std::size_t n = grid.size();
  const double two_dx = 2.0 * grid.spacing();
  const auto& u = f.values();
  std::vector<double> d(n);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / two_dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) / two_dx;
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / two_dx;
  return GridFunction(grid, std::move(d));
}

GridFunction solve_transport_exact(const TransportProblem& problem, double t) {
  if (!(t >= 0.0) || t > problem.horizon()) {
    throw DomainError("transport time must lie in [0, horizon]");
  }
  return translation_apply(problem.profile(), t, problem.alpha(), problem.grid());
}

GridFunction solve_transport_fd(const TransportProblem& problem, double t, int n_steps) {
  if (n_steps < 1) throw DomainError("n_steps must be >= 1");
  if (!(t >= 0.0) || t > problem.horizon()) {
    throw DomainError("transport time must lie in [0, horizon]");
  }
  const Grid1D& grid = problem.grid();
  const FunctionHandle& g = problem.profile();
  const double dx = grid.spacing();
  const double tau = t == 0.0 ? 0.0 : problem.alpha().clock(t);
  const double dtau = tau / n_steps;
  if (dtau > dx * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "CFL violated: dtau = " << dtau << " > dx = " << dx;
    throw CFLViolationError(msg.str());
  }
  if (!g.domain().contains(grid.x_max() + tau)) {
    throw DomainError("profile cannot supply inflow data at the right boundary");
  }

  const std::size_t n = grid.size();
  const double courant = dtau / dx;
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = g(grid.point(i));
  std::vector<double> next(n);
  for (int k = 1; k <= n_steps; ++k) {
    for (std::size_t i = 0; i + 1 < n; ++i) next[i] = u[i] + courant * (u[i + 1] - u[i]);
    next[n - 1] = g(grid.x_max() + k * tau / n_steps);
    u.swap(next);
  }
  return GridFunction(grid, std::move(u));
}

double pde_residual(const TransportProblem& problem, double t) {
  if (!(t > 0.0) || t > problem.horizon()) {
    throw DomainError("pde residual requires 0 < t <= horizon");
  }
  const Grid1D& grid = problem.grid();
  const AlphaOrder alpha = problem.alpha();
  const FunctionHandle& g = problem.profile();
  const GridFunction dx = translation_generator_apply(solve_transport_exact(problem, t));

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double x = grid.point(i);
    // t -> g(x + t^alpha / alpha), defined while the shifted point stays in g's domain.
    const double t_reach = alpha.inverse_clock(g.domain().hi - x);
    FunctionHandle along([&g, x, alpha](double s) { return g(x + alpha.clock(s)); },
                         Domain{0.0, t_reach});
    const double dt = conformable_derivative(along, t, alpha).value;
    worst = std::max(worst, std::abs(dt - dx[i]));
  }
  return worst;
}

}  // namespace fracsemi
