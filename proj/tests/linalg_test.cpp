#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mbanach/errors.hpp"
#include "mbanach/linalg.hpp"
#include "test_util.hpp"

using namespace mbanach;
using mbanach::testing::gram_operator_norm;
using mbanach::testing::gram_singular_values;
using mbanach::testing::gram_trace_norm;
using mbanach::testing::random_matrix;
using mbanach::testing::random_unitary;

TEST(ScalarMatrix, RejectsDegenerateShapesAndNonFiniteEntries) {
  EXPECT_THROW(ScalarMatrix(0, 2), InputError);
  EXPECT_THROW(ScalarMatrix(2, 0), InputError);
  EXPECT_THROW(ScalarMatrix(1, 2, {1.0}), InputError);
  EXPECT_THROW(ScalarMatrix(1, 1, {Complex(std::numeric_limits<double>::quiet_NaN(), 0)}), InputError);
  EXPECT_THROW(ScalarMatrix(1, 1, {Complex(0, std::numeric_limits<double>::infinity())}), InputError);
}

TEST(ScalarMatrix, Arithmetic) {
  const ScalarMatrix a{{1, 2}, {3, 4}};
  const ScalarMatrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (ScalarMatrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a + b, (ScalarMatrix{{1, 3}, {4, 4}}));
  EXPECT_EQ(a.transpose(), (ScalarMatrix{{1, 3}, {2, 4}}));
  const ScalarMatrix c{{Complex(0, 1), 2}};
  EXPECT_EQ(c.adjoint(), (ScalarMatrix{{Complex(0, -1)}, {2}}));
  EXPECT_THROW(a * ScalarMatrix(3, 1), InputError);
}

TEST(Norms, GoldenValues) {
  const ScalarMatrix id = ScalarMatrix::identity(2);
  const ScalarMatrix sign{{1, 1}, {1, -1}};
  const ScalarMatrix ones_zero{{1, 1}, {1, 0}};
  EXPECT_NEAR(operator_norm(id), 1.0, 1e-12);
  EXPECT_NEAR(trace_norm(id), 2.0, 1e-12);
  EXPECT_NEAR(operator_norm(sign), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(trace_norm(sign), 2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(operator_norm(ones_zero), (1 + std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(trace_norm(ones_zero), std::sqrt(5.0), 1e-12);
}

TEST(Norms, AllOnesMatchesGramOracle) {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) {
      const ScalarMatrix j = ScalarMatrix::ones(m, n);
      EXPECT_NEAR(operator_norm(j), gram_operator_norm(j), 1e-9);
      EXPECT_NEAR(operator_norm(j), std::sqrt(m * n), 1e-9);
    }
  }
}

TEST(Norms, MatchGramEigenvalueOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + trial % 4;
    const int n = 1 + (trial / 4) % 4;
    const ScalarMatrix a = random_matrix(m, n, rng);
    const auto sv = singular_values(a);
    const auto oracle = gram_singular_values(a);
    ASSERT_EQ(sv.size(), oracle.size());
    for (std::size_t k = 0; k < sv.size(); ++k) EXPECT_NEAR(sv[k], oracle[k], 1e-8);
    EXPECT_NEAR(operator_norm(a), gram_operator_norm(a), 1e-8);
    EXPECT_NEAR(trace_norm(a), gram_trace_norm(a), 1e-8);
  }
}

TEST(Norms, OrderingBetweenOperatorAndTraceNorm) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 5;
    const int n = 1 + (trial / 5) % 5;
    const ScalarMatrix a = random_matrix(m, n, rng);
    const double op = operator_norm(a);
    const double tr = trace_norm(a);
    EXPECT_LE(op, tr + 1e-12);
    EXPECT_LE(tr, std::min(m, n) * op + 1e-12);
  }
}

TEST(Norms, UnitaryInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const ScalarMatrix a = random_matrix(3, 4, rng);
    const ScalarMatrix u = random_unitary(3, rng);
    const ScalarMatrix v = random_unitary(4, rng);
    const ScalarMatrix b = u * a * v;
    EXPECT_NEAR(operator_norm(b), operator_norm(a), 1e-8);
    EXPECT_NEAR(trace_norm(b), trace_norm(a), 1e-8);
  }
}

TEST(Norms, OperatorNormIsSubmultiplicative) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const ScalarMatrix a = random_matrix(3, 2, rng);
    const ScalarMatrix b = random_matrix(2, 4, rng);
    EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) * (1 + 1e-12));
  }
}

TEST(Norms, TopSingularTripletReproducesSigma) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const ScalarMatrix a = random_matrix(3, 5, rng);
    const SingularTriplet t = top_singular_triplet(a);
    Complex uav = 0.0;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 5; ++c) uav += std::conj(t.left[r]) * a(r, c) * t.right[c];
    }
    EXPECT_NEAR(uav.real(), t.sigma, 1e-10);
    EXPECT_NEAR(uav.imag(), 0.0, 1e-10);
    EXPECT_NEAR(t.sigma, operator_norm(a), 1e-10);
  }
}

TEST(Injection, MatrixHasOrthonormalColumns) {
  EXPECT_EQ(injection_matrix(Injection::identity(2), 2), ScalarMatrix::identity(2));
  EXPECT_EQ(injection_matrix(Injection(2, {1}), 2), (ScalarMatrix{{0}, {1}}));
  const Injection alpha(5, {3, 0, 4});
  const ScalarMatrix u = injection_matrix(alpha, 5);
  EXPECT_EQ(u.adjoint() * u, ScalarMatrix::identity(3));
  EXPECT_NEAR(operator_norm(u), 1.0, 1e-12);
}

TEST(Injection, RejectsRepeatsAndRange) {
  EXPECT_THROW(Injection(3, {0, 0}), InputError);
  EXPECT_THROW(Injection(3, {3}), InputError);
  EXPECT_THROW(Injection(3, {-1}), InputError);
  EXPECT_THROW(Injection(2, {}), InputError);
}

TEST(Injection, Composition) {
  const Injection outer(5, {4, 2, 0});
  const Injection inner(3, {2, 0});
  const Injection both = outer.after(inner);
  EXPECT_EQ(both, Injection(5, {0, 4}));
  EXPECT_THROW(inner.after(outer), InputError);
}
