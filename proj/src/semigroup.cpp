#include "fracsemi/semigroup.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace fracsemi {

AlphaSemigroup::AlphaSemigroup(DenseMatrix generator, AlphaOrder alpha)
    : generator_(std::move(generator)), alpha_(alpha) {
  if (generator_.size() == 0) throw DimensionError("generator must be non-empty");
  if (!generator_.all_finite()) throw NonFiniteError("generator entries must be finite");
}

DenseMatrix AlphaSemigroup::evaluate(double t) const {
  if (!(t >= 0.0)) throw DomainError("semigroup time must be >= 0");
  if (t == 0.0) return DenseMatrix::identity(generator_.size());
  return matrix_exponential(alpha_.clock(t) * generator_);
}

StateVector AlphaSemigroup::apply(double t, std::span<const double> x) const {
  if (x.size() != generator_.size()) {
    throw DimensionError("state dimension does not match generator");
  }
  return evaluate(t) * x;
}

DenseMatrix semigroup_evaluate(const AlphaSemigroup& s, double t) { return s.evaluate(t); }

double semigroup_law_residual(const AlphaSemigroup& semigroup, double s, double t) {
  if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("semigroup law needs s, t >= 0");
  const double inv = 1.0 / semigroup.alpha().value();
  const DenseMatrix combined = semigroup.evaluate(std::pow(s + t, inv));
  const DenseMatrix product =
      semigroup.evaluate(std::pow(s, inv)) * semigroup.evaluate(std::pow(t, inv));
  return frobenius_norm(combined - product);
}

DenseMatrix estimate_generator(const SemigroupAction& action, std::size_t dimension,
                               AlphaOrder alpha, double b, const LimitOptions& options) {
  if (!(b > 0.0)) throw DomainError("generator window b must be > 0");
  DenseMatrix estimate(dimension);
  for (std::size_t j = 0; j < dimension; ++j) {
    StateVector probe(dimension, 0.0);
    probe[j] = 1.0;
    VectorFunction orbit([&action, probe](double t) { return action(t, probe); },
                         Domain{0.0, b});
    VectorDerivativeResult column;
    try {
      column = conformable_derivative_at_zero(orbit, alpha, options);
    } catch (const NoLimitError& e) {
      throw NoLimitError("generator column " + std::to_string(j) + ": " + e.what());
    }
    if (column.value.size() != dimension) {
      throw DimensionError("semigroup action returned a state of the wrong dimension");
    }
    for (std::size_t i = 0; i < dimension; ++i) estimate(i, j) = column.value[i];
  }
  return estimate;
}

DenseMatrix estimate_generator(const AlphaSemigroup& semigroup, double b,
                               const LimitOptions& options) {
  SemigroupAction action = [&semigroup](double t, std::span<const double> x) {
    return semigroup.apply(t, x);
  };
  return estimate_generator(action, semigroup.dimension(), semigroup.alpha(), b, options);
}

CommutationResidual commutation_residual(const AlphaSemigroup& semigroup, double t,
                                         std::span<const double> x) {
  if (!(t > 0.0)) throw DomainError("commutation check requires t > 0");
  if (x.size() != semigroup.dimension()) {
    throw DimensionError("state dimension does not match generator");
  }
  const StateVector state(x.begin(), x.end());
  VectorFunction orbit([&semigroup, state](double s) { return semigroup.apply(s, state); });
  const StateVector derivative = conformable_derivative(orbit, t, semigroup.alpha()).value;

  const DenseMatrix& a = semigroup.generator();
  const DenseMatrix tt = semigroup.evaluate(t);
  const StateVector generator_first = a * (tt * state);
  const StateVector semigroup_first = tt * (a * state);
  return {euclidean_norm(subtract(derivative, generator_first)),
          euclidean_norm(subtract(derivative, semigroup_first))};
}

std::vector<double> continuity_profile(const AlphaSemigroup& semigroup,
                                       std::span<const double> x, int max_k) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_k) + 1);
  for (int k = 0; k <= max_k; ++k) {
    out.push_back(euclidean_norm(subtract(semigroup.apply(std::ldexp(1.0, -k), x), x)));
  }
  return out;
}

}  // namespace fracsemi
