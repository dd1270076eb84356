#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fracsemi/errors.hpp"
#include "fracsemi/semigroup.hpp"
#include "oracles.hpp"

using namespace fracsemi;

namespace {

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

const DenseMatrix kRotation = DenseMatrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}});

}  // namespace

TEST_CASE("semigroup evaluate examples") {
  SUBCASE("identity at t = 0 exactly") {
    std::mt19937_64 rng(3);
    for (double a : {0.25, 1.0}) {
      const AlphaSemigroup s(oracle::random_matrix(rng, 4, 5.0), AlphaOrder(a));
      CHECK(semigroup_evaluate(s, 0.0) == DenseMatrix::identity(4));
    }
  }
  SUBCASE("scalar, alpha = 0.5, t = 4 gives e^4") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{1.0}}), AlphaOrder(0.5));
    CHECK(semigroup_evaluate(s, 4.0)(0, 0) == doctest::Approx(std::exp(4.0)).epsilon(1e-14));
  }
  SUBCASE("classical diagonal semigroup") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{-1.0, 0.0}, {0.0, -2.0}}), AlphaOrder(1.0));
    const auto e = semigroup_evaluate(s, 1.0);
    CHECK(e(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  }
  SUBCASE("alpha = 1 is bitwise the classical exponential") {
    const auto a = DenseMatrix::from_rows({{0.3, -1.2}, {0.7, 0.1}});
    const AlphaSemigroup s(a, AlphaOrder(1.0));
    CHECK(s.evaluate(1.3) == matrix_exponential(1.3 * a));
  }
  SUBCASE("negative time") {
    const AlphaSemigroup s(kRotation, AlphaOrder(0.5));
    CHECK_THROWS_AS(s.evaluate(-1.0), DomainError);
  }
  SUBCASE("apply matches evaluate") {
    const AlphaSemigroup s(kRotation, AlphaOrder(0.5));
    const StateVector x{1.0, 2.0};
    CHECK(s.apply(0.7, x) == s.evaluate(0.7) * std::span<const double>(x));
  }
}

TEST_CASE("semigroup law residual examples") {
  const AlphaSemigroup rot(kRotation, AlphaOrder(0.5));
  CHECK(semigroup_law_residual(rot, 0.0, 0.0) == 0.0);
  CHECK(semigroup_law_residual(rot, 1.0, 2.0) <= 1e-10);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const AlphaSemigroup s(oracle::random_matrix(rng, 3, 5.0), AlphaOrder(1.0));
    CHECK(semigroup_law_residual(s, 1.0, 1.0) <= 1e-10 * std::exp(2.0 * 5.0));
  }
}

TEST_CASE("semigroup law, scaled by the reach in the fractional clock") {
  std::mt19937_64 rng(12345);
  const double grid[] = {0.0, 0.1, 0.5, 1.0, 2.0, 4.0};
  const double alphas[] = {0.25, 0.5, 0.75, 1.0};
  std::uniform_real_distribution<double> norm(0.0, 5.0);
  for (std::size_t n : {1, 2, 5}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = oracle::random_matrix(rng, n, norm(rng));
      const double fro = frobenius_norm(a);
      for (double al : alphas) {
        const AlphaSemigroup sg(a, AlphaOrder(al));
        for (double s : grid)
          for (double t : grid) {
            const double bound = 1e-10 * std::exp(fro * (s + t) / al);
            CHECK(semigroup_law_residual(sg, s, t) <= bound);
          }
      }
    }
  }
}

TEST_CASE("generator estimation examples") {
  SUBCASE("diagonal") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}}), AlphaOrder(0.5));
    CHECK(max_abs_diff(estimate_generator(s), s.generator()) <= 1e-4);
  }
  SUBCASE("zero") {
    const AlphaSemigroup s(DenseMatrix(2), AlphaOrder(0.5));
    CHECK(estimate_generator(s) == DenseMatrix(2));
  }
  SUBCASE("nilpotent") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), AlphaOrder(0.7));
    CHECK(max_abs_diff(estimate_generator(s), s.generator()) <= 1e-4);
  }
  SUBCASE("black-box action") {
    const AlphaOrder alpha(0.5);
    SemigroupAction scale = [alpha](double t, std::span<const double> x) {
      StateVector out(x.begin(), x.end());
      for (double& v : out) v *= std::exp(-2.0 * alpha.clock(t));
      return out;
    };
    const auto a = estimate_generator(scale, 3, alpha, 1.0);
    CHECK(max_abs_diff(a, -2.0 * DenseMatrix::identity(3)) <= 1e-6);
  }
  SUBCASE("a family without a generator") {
    const AlphaOrder alpha(0.5);
    SemigroupAction root = [](double t, std::span<const double> x) {
      StateVector out(x.begin(), x.end());
      out[0] += std::pow(t, 0.25);
      return out;
    };
    CHECK_THROWS_AS(estimate_generator(root, 2, alpha, 1.0), NoLimitError);
  }
}

TEST_CASE("generator round trip on random matrices") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_real_distribution<double> norm(0.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_matrix(rng, dim(rng), norm(rng));
    for (double al : {0.25, 0.5, 1.0}) {
      const AlphaSemigroup s(a, AlphaOrder(al));
      CHECK(frobenius_norm(estimate_generator(s) - a) <= 1e-3 * std::max(1.0, frobenius_norm(a)));
    }
  }
}

TEST_CASE("commutation residual examples") {
  SUBCASE("zero generator") {
    const AlphaSemigroup s(DenseMatrix(2), AlphaOrder(0.4));
    const StateVector x{1.0, -2.0};
    const auto r = commutation_residual(s, 1.3, x);
    CHECK(r.generator_first <= 1e-9);
    CHECK(r.semigroup_first <= 1e-9);
  }
  SUBCASE("diagonal") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{-1.0, 0.0}, {0.0, 3.0}}), AlphaOrder(0.5));
    const auto r = commutation_residual(s, 1.0, StateVector{1.0, 1.0});
    CHECK(r.generator_first <= 1e-6);
    CHECK(r.semigroup_first <= 1e-6);
  }
  SUBCASE("rotation") {
    const AlphaSemigroup s(kRotation, AlphaOrder(0.8));
    const auto r = commutation_residual(s, 2.0, StateVector{1.0, 0.0});
    CHECK(r.generator_first <= 1e-6);
    CHECK(r.semigroup_first <= 1e-6);
  }
  SUBCASE("t must be positive") {
    const AlphaSemigroup s(kRotation, AlphaOrder(0.8));
    CHECK_THROWS_AS(commutation_residual(s, 0.0, StateVector{1.0, 0.0}), DomainError);
  }
}

TEST_CASE("commutation on random matrices, scaled by the fractional clock") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_real_distribution<double> norm(0.0, 5.0);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_matrix(rng, dim(rng), norm(rng));
    StateVector x(a.size());
    for (double& v : x) v = entry(rng);
    for (double al : {0.25, 0.5, 1.0})
      for (double t : {0.5, 1.0, 2.0}) {
        const AlphaSemigroup s(a, AlphaOrder(al));
        const auto r = commutation_residual(s, t, x);
        const double bound = 1e-5 * euclidean_norm(x) * std::exp(frobenius_norm(a) * s.alpha().clock(t));
        CHECK(r.generator_first <= bound);
        CHECK(r.semigroup_first <= bound);
      }
  }
}

TEST_CASE("continuity profile") {
  SUBCASE("alpha = 1 small generator decays below 1e-6") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{-0.5, 0.2}, {0.1, 0.3}}), AlphaOrder(1.0));
    const auto profile = continuity_profile(s, StateVector{1.0, 1.0});
    REQUIRE(profile.size() == 21);
    for (std::size_t k = 1; k < profile.size(); ++k) CHECK(profile[k] < profile[k - 1]);
    CHECK(profile.back() < 1e-6);
  }
  SUBCASE("fractional orders decay at rate 2^{-k alpha}") {
    const AlphaSemigroup s(DenseMatrix::from_rows({{-0.5, 0.2}, {0.1, 0.3}}), AlphaOrder(0.5));
    const StateVector x{1.0, 1.0};
    const auto profile = continuity_profile(s, x);
    const auto ax = s.generator() * std::span<const double>(x);
    const double leading = euclidean_norm(ax) * std::pow(2.0, -20 * 0.5) / 0.5;
    CHECK(profile.back() == doctest::Approx(leading).epsilon(1e-2));
    for (std::size_t k = 1; k < profile.size(); ++k) CHECK(profile[k] < profile[k - 1]);
  }
  SUBCASE("zero generator") {
    const AlphaSemigroup s(DenseMatrix(3), AlphaOrder(0.3));
    for (double v : continuity_profile(s, StateVector{1.0, 2.0, 3.0})) CHECK(v == 0.0);
  }
}
