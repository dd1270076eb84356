#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fracsemi {

using StateVector = std::vector<double>;

/// Square real matrix, row-major. Arithmetic is unchecked; finiteness is validated
/// where matrices enter the library (from_rows, AlphaSemigroup, matrix_exponential).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> entries);
  /// Throws DimensionError unless every row has rows.size() entries,
  /// NonFiniteError on non-finite entries.
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<std::vector<double>> rows() const;
  StateVector column(std::size_t j) const;
  bool all_finite() const noexcept;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
  friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend StateVector operator*(const DenseMatrix& a, std::span<const double> x);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

double frobenius_norm(const DenseMatrix& m);
/// Maximum absolute column sum.
double one_norm(const DenseMatrix& m);
double euclidean_norm(std::span<const double> x);
StateVector subtract(std::span<const double> a, std::span<const double> b);

/// Solves A X = B by LU with partial pivoting. Throws DomainError if A is singular.
DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b);

/// exp(M) by scaling and squaring with the diagonal (8,8) Pade approximant, scaled
/// so that ||M||_1 / 2^s <= 0.5. Throws NonFiniteError on non-finite input or overflow.
DenseMatrix matrix_exponential(const DenseMatrix& m);

}  // namespace fracsemi
