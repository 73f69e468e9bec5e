#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "mbanach/arrays.hpp"
#include "mbanach/errors.hpp"

using namespace mbanach;

namespace {

EnumCaps caps_of(int r, int c, int p, int samples = 0, std::uint64_t seed = 0) {
  EnumCaps caps;
  caps.max_rows = r;
  caps.max_cols = c;
  caps.max_cells = p;
  caps.samples = samples;
  caps.seed = seed;
  return caps;
}

// Every array with m <= r, n <= c, mn <= p, by counting in base |X|.
std::set<Array> brute_force(int alphabet, int r, int c, int p) {
  std::set<Array> out;
  for (int m = 1; m <= r; ++m) {
    for (int n = 1; n <= c; ++n) {
      if (m * n > p) continue;
      long total = 1;
      for (int k = 0; k < m * n; ++k) total *= alphabet;
      for (long code = 0; code < total; ++code) {
        std::vector<int> cells;
        long rest = code;
        for (int k = 0; k < m * n; ++k) {
          cells.push_back(static_cast<int>(rest % alphabet));
          rest /= alphabet;
        }
        out.emplace(m, n, std::move(cells));
      }
    }
  }
  return out;
}

}  // namespace

TEST(Array, RejectsBadShapes) {
  EXPECT_THROW(Array(0, 1, {}), InputError);
  EXPECT_THROW(Array(1, 2, {0}), InputError);
}

TEST(Array, SubarrayPicksEntries) {
  const Array a(2, 3, {0, 1, 2, 3, 4, 5});
  const Array s = subarray(a, Injection(2, {1}), Injection(3, {2, 0}));
  EXPECT_EQ(s, Array(1, 2, {5, 3}));
  EXPECT_EQ(subarray(a, Injection::identity(2), Injection::identity(3)), a);
}

TEST(Array, SubarrayIsFunctorial) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cell(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> cells(20);
    for (auto& c : cells) c = cell(rng);
    const Array a(4, 5, cells);
    const Injection a1(4, {3, 1, 0});
    const Injection a2(3, {2, 0});
    const Injection b1(5, {4, 0, 2, 1});
    const Injection b2(4, {1, 3, 0});
    EXPECT_EQ(subarray(subarray(a, a1, b1), a2, b2), subarray(a, a1.after(a2), b1.after(b2)));
  }
}

TEST(Array, SelectMatchesSubarray) {
  const Array a(3, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8});
  const std::vector<int> rows{2, 0};
  const std::vector<int> cols{1};
  EXPECT_EQ(select(a, rows, cols), subarray(a, Injection(3, rows), Injection(3, cols)));
}

TEST(Array, AmpliationComposes) {
  const Array a(2, 2, {0, 1, 2, 0});
  const SetMap phi{{1, 0, 1}, 2};
  const SetMap psi{{2, 0}, 3};
  EXPECT_EQ(ampliate(psi, ampliate(phi, a)), ampliate(compose(psi, phi), a));
  const ScalarMap f{{Complex(1), Complex(0, 1), Complex(-1)}};
  EXPECT_EQ(ampliate(compose(f, psi), ampliate(phi, a)), ampliate(f, ampliate(compose(psi, phi), a)));
  EXPECT_EQ(ampliate(SetMap::identity(3), a), a);
}

TEST(Array, IndicatorOfMinusOne) {
  // Indicator of the point -1 on the sign array [1 1; 1 -1].
  const Array a(2, 2, {0, 0, 0, 1});
  const ScalarMap chi{{0.0, 1.0}};
  EXPECT_EQ(ampliate(chi, a), (ScalarMatrix{{0, 0}, {0, 1}}));
}

TEST(Enumeration, CountForTwoPointsAtSmallCaps) {
  const EnumCaps caps = caps_of(2, 2, 4);
  EXPECT_EQ(ArrayEnumeration::count(2, caps), 26u);
  const ArrayEnumeration e(2, caps);
  EXPECT_EQ(e.size(), 26u);
  EXPECT_EQ(ArrayEnumeration::count(2, caps_of(1, 1, 1)), 2u);
}

TEST(Enumeration, MatchesBruteForce) {
  for (int alphabet = 1; alphabet <= 3; ++alphabet) {
    for (const auto& [r, c, p] : std::vector<std::tuple<int, int, int>>{{2, 2, 4}, {3, 2, 4}, {3, 3, 5}, {1, 4, 4}}) {
      const ArrayEnumeration e(alphabet, caps_of(r, c, p));
      const std::set<Array> oracle = brute_force(alphabet, r, c, p);
      std::set<Array> seen;
      for (std::size_t k = 0; k < e.size(); ++k) seen.insert(e.at(k));
      EXPECT_EQ(seen.size(), e.size()) << "duplicates";
      EXPECT_EQ(seen, oracle);
      EXPECT_EQ(ArrayEnumeration::count(alphabet, caps_of(r, c, p)), oracle.size());
    }
  }
}

TEST(Enumeration, OrderedByCellsThenRows) {
  const ArrayEnumeration e(2, caps_of(3, 3, 6));
  for (std::size_t k = 1; k < e.size(); ++k) {
    const Array prev = e.at(k - 1);
    const Array cur = e.at(k);
    const auto key = [](const Array& a) { return std::pair(a.size(), a.rows()); };
    EXPECT_LE(key(prev), key(cur));
    if (key(prev) == key(cur)) {
      EXPECT_LT(prev, cur);
    }
  }
}

TEST(Enumeration, IndexOfRoundTrips) {
  const ArrayEnumeration e(3, caps_of(3, 3, 6));
  for (std::size_t k = 0; k < e.exhaustive_size(); ++k) EXPECT_EQ(e.index_of(e.at(k)), k);
  EXPECT_FALSE(e.index_of(Array::constant(3, 3, 0)).has_value());
  EXPECT_FALSE(e.index_of(Array::constant(1, 1, 3)).has_value());
}

TEST(Enumeration, SamplesAreDeterministicPerSeed) {
  const ArrayEnumeration a(2, caps_of(4, 4, 4, 50, 7));
  const ArrayEnumeration b(2, caps_of(4, 4, 4, 50, 7));
  const ArrayEnumeration c(2, caps_of(4, 4, 4, 50, 8));
  ASSERT_EQ(a.sample_size(), 50u);
  bool differs = false;
  for (std::size_t k = a.exhaustive_size(); k < a.size(); ++k) {
    EXPECT_EQ(a.at(k), b.at(k));
    const Array s = a.at(k);
    EXPECT_GT(s.size(), 4);
    EXPECT_LE(s.rows(), 4);
    EXPECT_LE(s.cols(), 4);
    differs = differs || !(s == c.at(k));
  }
  EXPECT_TRUE(differs);
}

TEST(Enumeration, ExtrasComeLast) {
  const Array extra = Array::constant(5, 5, 1);
  const ArrayEnumeration e(2, caps_of(1, 1, 1), {extra});
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e.at(2), extra);
}

TEST(Enumeration, CapsValidation) {
  EXPECT_THROW(validate(caps_of(0, 1, 1)), InputError);
  EXPECT_THROW(validate(caps_of(1, 1, 0)), InputError);
  EXPECT_THROW(validate(caps_of(1, 1, 1, -1)), InputError);
}

TEST(Hadamard, FirstMembers) {
  EXPECT_EQ(hadamard_matrix(0), (ScalarMatrix{{1}}));
  EXPECT_EQ(hadamard_matrix(1), (ScalarMatrix{{1, -1}, {1, 1}}));
  const ScalarMatrix a2 = hadamard_matrix(2);
  EXPECT_EQ(a2.rows(), 3);
  EXPECT_EQ(a2.cols(), 4);
  EXPECT_EQ(hadamard_sequence(1, 4, 7), Array(2, 2, {4, 7, 4, 4}));
}

TEST(Hadamard, GramMatrixAndNorm) {
  for (int m = 0; m <= 10; ++m) {
    const ScalarMatrix a = hadamard_matrix(m);
    const double scale = std::pow(2.0, m);
    EXPECT_LT(frobenius_norm(a * a.adjoint() - ScalarMatrix::identity(m + 1) * scale), 1e-9);
    EXPECT_NEAR(operator_norm(a), std::sqrt(scale), 1e-9 * std::sqrt(scale));
    for (int c = 0; c < a.cols(); ++c) EXPECT_EQ(a(m, c), Complex(1.0));
  }
}

TEST(Hadamard, FactorsReproduceIndicators) {
  for (int m = 0; m <= 6; ++m) {
    const ScalarMatrix a = hadamard_matrix(m);
    const HadamardFactors f = hadamard_factors(m);
    ScalarMatrix plus(a.rows(), a.cols());
    ScalarMatrix minus(a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r) {
      for (int c = 0; c < a.cols(); ++c) (a(r, c).real() > 0 ? plus : minus)(r, c) = 1.0;
    }
    EXPECT_LT(frobenius_norm(f.plus * a - plus), 1e-12);
    EXPECT_LT(frobenius_norm(f.minus * a - minus), 1e-12);
  }
}

TEST(Hadamard, CompressedFactorsGiveTheSameNorms) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int m = 0; m <= 9; ++m) {
    const ScalarMatrix a = hadamard_matrix(m);
    const HadamardFactors full = hadamard_factors(m);
    const HadamardFactors small = hadamard_compressed_factors(m);
    for (int trial = 0; trial < 10; ++trial) {
      const Complex p(g(rng), g(rng));
      const Complex q(g(rng), g(rng));
      ScalarMatrix pattern(a.rows(), a.cols());
      for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) pattern(r, c) = a(r, c).real() > 0 ? p : q;
      }
      const double direct = operator_norm(pattern);
      const double scale = std::pow(2.0, m / 2.0);
      EXPECT_NEAR(scale * operator_norm(full.plus * p + full.minus * q), direct, 1e-9 * direct);
      EXPECT_NEAR(scale * operator_norm(small.plus * p + small.minus * q), direct, 1e-9 * direct);
    }
  }
}

TEST(Hadamard, DepthLimits) {
  EXPECT_THROW(hadamard_signs(kMaxHadamardDepth + 1), ResourceError);
  EXPECT_THROW(hadamard_signs(-1), InputError);
  EXPECT_NO_THROW(hadamard_compressed_factors(kMaxFactoredHadamard));
}
