#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracsemi/alpha.hpp"
#include "fracsemi/conformable.hpp"
#include "fracsemi/matrix.hpp"

namespace fracsemi {

/// The alpha-semigroup T(t) = exp((t^alpha / alpha) A) generated by a matrix A.
/// At alpha = 1 this is the classical exp(tA), computed by the same code path.
class AlphaSemigroup {
 public:
  /// Throws NonFiniteError if the generator has non-finite entries.
  AlphaSemigroup(DenseMatrix generator, AlphaOrder alpha);

  const DenseMatrix& generator() const noexcept { return generator_; }
  AlphaOrder alpha() const noexcept { return alpha_; }
  std::size_t dimension() const noexcept { return generator_.size(); }

  /// T(t). Returns the identity exactly at t = 0. Throws DomainError for t < 0.
  DenseMatrix evaluate(double t) const;
  /// T(t) x
  StateVector apply(double t, std::span<const double> x) const;

 private:
  DenseMatrix generator_;
  AlphaOrder alpha_;
};

DenseMatrix semigroup_evaluate(const AlphaSemigroup& s, double t);

/// || T((s+t)^{1/alpha}) - T(s^{1/alpha}) T(t^{1/alpha}) ||_F
double semigroup_law_residual(const AlphaSemigroup& semigroup, double s, double t);

/// Black-box semigroup action (t, x) -> T(t) x.
using SemigroupAction = std::function<StateVector(double, std::span<const double>)>;

/// Recovers the generator column by column as the limit t -> 0+ of the conformable
/// derivative of t -> T(t) e_j on [0, b]. Throws NoLimitError naming the column.
DenseMatrix estimate_generator(const SemigroupAction& action, std::size_t dimension,
                               AlphaOrder alpha, double b, const LimitOptions& options = {});
DenseMatrix estimate_generator(const AlphaSemigroup& semigroup, double b = 1.0,
                               const LimitOptions& options = {});

struct CommutationResidual {
  double generator_first = 0.0;  ///< || D T(t)x - A T(t) x ||_2
  double semigroup_first = 0.0;  ///< || D T(t)x - T(t) A x ||_2
};

/// Compares the numerical conformable derivative of t -> T(t)x with A T(t)x and T(t)Ax.
/// Throws DomainError unless t > 0.
CommutationResidual commutation_residual(const AlphaSemigroup& semigroup, double t,
                                         std::span<const double> x);

/// || T(2^{-k}) x - x ||_2 for k = 0..max_k.
std::vector<double> continuity_profile(const AlphaSemigroup& semigroup,
                                       std::span<const double> x, int max_k = 20);

}  // namespace fracsemi
