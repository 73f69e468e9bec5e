#include <gtest/gtest.h>

#include "mbanach/axioms.hpp"

using namespace mbanach;

namespace {

// MIN(ℂ) weight plus 1 on 1×1 arrays: single entries outweigh the rows that
// contain them.
class InflatedPointRule final : public WeightRule {
 public:
  std::string kind() const override { return "InflatedPoint"; }
  double value(const AWSet& x, const Array& a) const override {
    return operator_norm(payload_matrix(x, a).slice(0)) + (a.size() == 1 ? 1.0 : 0.0);
  }
};

// MA over two unit-weight points with the 2×2 values lowered below the
// weight of their 1×2 rows.
class LoweredSquareRule final : public WeightRule {
 public:
  std::string kind() const override { return "LoweredSquare"; }
  double value(const AWSet&, const Array& a) const override {
    return a.rows() == 2 && a.cols() == 2 ? 1.5 : static_cast<double>(a.size());
  }
};

EnumCaps small_caps() {
  EnumCaps caps;
  caps.max_rows = 3;
  caps.max_cols = 3;
  caps.max_cells = 6;
  caps.samples = 100;
  return caps;
}

}  // namespace

TEST(Axioms, HoldForEveryExactRule) {
  const std::vector<std::shared_ptr<const AWSet>> sets{
      min_scalar_set(std::vector<Complex>{1.0, -1.0}),
      amax_scalar_set(std::vector<Complex>{1.0, Complex(0, 1)}),
      ma_set({{"a", "b"}, {2.0, 3.0}}),
      min_array_set({{"a", "b"}, {2.0, 0.0}}),
      zx_set(min_scalar_set(std::vector<Complex>{1.0, 0.5})),
      scaled_set(amax_scalar_set(std::vector<Complex>{1.0}), 3.0),
      weighted_l1_set({Point::vector("p", {1.0, 0.0}), Point::vector("q", {1.0, 1.0})}, {2.0, 1.0}),
      l1sum_set({Point::vector("p", {1.0, 0.0}), Point::vector("q", {0.5, -1.0})},
                {std::make_shared<const MinScalarNorm>(), std::make_shared<const AmaxScalarNorm>()}),
      zero_point_set(),
  };
  for (const auto& x : sets) {
    const AxiomReport r = check_axioms(*x, small_caps(), 500);
    EXPECT_TRUE(r.passed()) << x->rule().kind() << " first violation on axiom "
                            << (r.violations.empty() ? 0 : r.violations.front().axiom);
    EXPECT_GT(r.exhaustive_checks, 0u);
    EXPECT_EQ(r.sampled_checks, 500u);
  }
}

TEST(Axioms, DetectsInflatedPoints) {
  const auto x = make_set({Point::scalar("1", 1.0), Point::scalar("-1", -1.0)}, std::make_shared<InflatedPointRule>());
  const AxiomReport r = check_axioms(*x, small_caps(), 0);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations.front().axiom, 2);
  EXPECT_GT(r.violations.front().lhs, r.violations.front().rhs);
}

TEST(Axioms, DetectsLoweredSquares) {
  const auto x = make_set({Point::plain("a"), Point::plain("b")}, std::make_shared<LoweredSquareRule>());
  const AxiomReport r = check_axioms(*x, small_caps(), 0);
  ASSERT_FALSE(r.passed());
  bool monotonicity = false;
  for (const auto& v : r.violations) monotonicity = monotonicity || v.axiom == 2;
  EXPECT_TRUE(monotonicity);
}

TEST(Axioms, ReportIsIndependentOfExecution) {
  const auto x = make_set({Point::scalar("1", 1.0), Point::scalar("-1", -1.0)}, std::make_shared<InflatedPointRule>());
  const AxiomReport a = check_axioms(*x, small_caps(), 300, Execution::serial);
  const AxiomReport b = check_axioms(*x, small_caps(), 300, Execution::parallel);
  EXPECT_EQ(a.violation_count, b.violation_count);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t k = 0; k < a.violations.size(); ++k) {
    EXPECT_EQ(a.violations[k].axiom, b.violations[k].axiom);
    EXPECT_EQ(a.violations[k].array, b.violations[k].array);
    EXPECT_EQ(a.violations[k].rows, b.violations[k].rows);
    EXPECT_EQ(a.violations[k].cols, b.violations[k].cols);
    EXPECT_EQ(a.violations[k].lhs, b.violations[k].lhs);
  }
}

TEST(Axioms, BracketRulesOnlyFlagCertainViolations) {
  const auto d = disjoint_union({min_scalar_set(std::vector<Complex>{1.0}), min_scalar_set(std::vector<Complex>{-1.0})});
  EnumCaps caps = small_caps();
  caps.max_cells = 4;
  EXPECT_TRUE(check_axioms(*d, caps, 50).passed());
}
