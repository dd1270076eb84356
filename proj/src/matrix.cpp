#include "fracsemi/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fracsemi/errors.hpp"

namespace fracsemi {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> entries) {
  DenseMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DimensionError("matrix must have at least one row");
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw DimensionError("generator must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) throw NonFiniteError("matrix entries must be finite");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

std::vector<std::vector<double>> DenseMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

StateVector DenseMatrix::column(std::size_t j) const {
  StateVector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (other.n_ != n_) throw DimensionError("matrix dimensions differ");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (other.n_ != n_) throw DimensionError("matrix dimensions differ");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_ != b.n_) throw DimensionError("matrix dimensions differ");
  const std::size_t n = a.n_;
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

StateVector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.n_) throw DimensionError("vector dimension does not match matrix");
  StateVector y(a.n_, 0.0);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

double frobenius_norm(const DenseMatrix& m) { return euclidean_norm(m.data()); }

double one_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) sum += std::abs(m(i, j));
    best = std::max(best, sum);
  }
  return best;
}

double euclidean_norm(std::span<const double> x) {
  // Scaled accumulation avoids overflow for large semigroup values.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double v : x) sum += (v / scale) * (v / scale);
  return scale * std::sqrt(sum);
}

StateVector subtract(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("vector dimensions differ");
  StateVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionError("matrix dimensions differ");
  DenseMatrix lu = a;
  DenseMatrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == 0.0) throw DomainError("singular matrix in linear solve");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(pivot, j));
        std::swap(x(k, j), x(pivot, j));
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / lu(k, k);
      if (factor == 0.0) continue;
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= factor * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = x(kk, j);
      for (std::size_t i = kk + 1; i < n; ++i) sum -= lu(kk, i) * x(i, j);
      x(kk, j) = sum / lu(kk, kk);
    }
  }
  return x;
}

namespace {

// c_k = (2q-k)! q! / ((2q)! k! (q-k)!) for q = 8.
constexpr std::array<double, 9> kPadeCoefficients = {
    1.0,
    1.0 / 2.0,
    7.0 / 60.0,
    1.0 / 60.0,
    1.0 / 624.0,
    1.0 / 9360.0,
    1.0 / 205920.0,
    1.0 / 7207200.0,
    1.0 / 518918400.0,
};

constexpr double kScaledNormBound = 0.5;

}  // namespace

DenseMatrix matrix_exponential(const DenseMatrix& m) {
  if (!m.all_finite()) throw NonFiniteError("matrix exponential input is not finite");
  const std::size_t n = m.size();
  const double norm = one_norm(m);

  int squarings = 0;
  if (norm > kScaledNormBound) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormBound)));
    while (std::ldexp(norm, -squarings) > kScaledNormBound) ++squarings;
  }
  const DenseMatrix x = std::ldexp(1.0, -squarings) * m;

  DenseMatrix numer = DenseMatrix::identity(n);
  DenseMatrix denom = DenseMatrix::identity(n);
  DenseMatrix power = DenseMatrix::identity(n);
  for (std::size_t k = 1; k < kPadeCoefficients.size(); ++k) {
    power = power * x;
    const double c = kPadeCoefficients[k];
    numer += c * power;
    if (k % 2 == 0) {
      denom += c * power;
    } else {
      denom -= c * power;
    }
  }
  DenseMatrix result = solve(denom, numer);
  for (int i = 0; i < squarings; ++i) result = result * result;

  if (!result.all_finite()) {
    std::ostringstream msg;
    msg << "matrix exponential overflowed (||M||_1 = " << norm << ")";
    throw NonFiniteError(msg.str());
  }
  return result;
}

}  // namespace fracsemi
