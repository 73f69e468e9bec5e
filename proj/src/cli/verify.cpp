#include <cmath>
#include <sstream>

#include "mbanach/cbmaps.hpp"
#include "mbanach/cli.hpp"
#include "mbanach/parse.hpp"
#include "mbanach/tensor.hpp"

namespace mbanach {
namespace {

constexpr double kTol = 1e-9;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string caps_note(const EnumCaps& c) {
  return "caps " + std::to_string(c.max_rows) + "," + std::to_string(c.max_cols) + "," +
         std::to_string(c.max_cells) + " samples " + std::to_string(c.samples) + " seed " + std::to_string(c.seed) +
         " hadamard " + std::to_string(c.hadamard_depth);
}

class Suite {
 public:
  void equal(std::string name, double expected, double computed, double tol = kTol, std::string detail = {}) {
    const bool ok = std::abs(expected - computed) <= tol * std::max(1.0, std::abs(expected));
    items_.push_back({std::move(name), num(expected), num(computed), ok, std::move(detail)});
  }
  void at_most(std::string name, double bound, double computed, std::string detail = {}) {
    items_.push_back({std::move(name), "<= " + num(bound), num(computed), computed <= bound + kTol, std::move(detail)});
  }
  void at_least(std::string name, double bound, double computed, std::string detail = {}) {
    items_.push_back({std::move(name), ">= " + num(bound), num(computed), computed >= bound - kTol, std::move(detail)});
  }
  void same(std::string name, const std::string& expected, const std::string& computed, std::string detail = {}) {
    items_.push_back({std::move(name), expected, computed, expected == computed, std::move(detail)});
  }
  std::vector<VerifyItem> take() { return std::move(items_); }

 private:
  std::vector<VerifyItem> items_;
};

}  // namespace

std::vector<VerifyItem> paper_verify(const VerifyHooks& hooks) {
  Suite s;
  const double r2 = std::sqrt(2.0);
  const double r5 = std::sqrt(5.0);

  // Golden norm table.
  const ScalarMatrix sign{{1, 1}, {1, -1}};
  const ScalarMatrix ones_zero{{1, 1}, {1, 0}};
  const ScalarMatrix id = ScalarMatrix::identity(2);
  s.equal("pm1 array: MIN(C) weight", r2, hooks.operator_norm(sign));
  s.equal("pm1 array: AMAX(C) weight", 2 * r2, hooks.trace_norm(sign));
  const auto ma_pm = parse_alphabet("ma:1=1,-1=1");
  s.equal("pm1 array: MA weight", 4.0, ma_pm->exact_weight(ma_pm->parse_array("1,1;1,-1")));
  s.equal("1/0 array: MIN(C) weight", (1 + r5) / 2, hooks.operator_norm(ones_zero));
  s.equal("1/0 array: AMAX(C) weight", r5, hooks.trace_norm(ones_zero));
  const auto ma_10 = parse_alphabet("ma:1=1,0=0");
  s.equal("1/0 array: MA weight", 3.0, ma_10->exact_weight(ma_10->parse_array("1,1;1,0")));
  const auto z1 = zx_set(min_scalar_set(std::vector<Complex>{1.0}));
  s.equal("Theta array: Z({1}) weight", r2, zx_weight(*z1, z1->parse_array("1,1;1,Theta")).value);
  s.equal("identity: MIN(C) norm", 1.0, hooks.operator_norm(id));
  s.equal("identity: AMAX(C) norm", 2.0, hooks.trace_norm(id));
  {
    auto block = std::make_shared<const MinScalarNorm>();
    L1SumNorm sum({block, block});
    VectorMatrix diag({ScalarMatrix{{1, 0}, {0, 0}}, ScalarMatrix{{0, 0}, {0, 1}}});
    s.equal("block diagonal: l1-sum of MIN(C) norm", 2.0, sum.norm(diag));
  }

  // Disjoint-union brackets.
  {
    const auto one = min_scalar_set(std::vector<Complex>{1.0});
    const auto minus = min_scalar_set(std::vector<Complex>{-1.0});
    const auto zero = min_scalar_set(std::vector<Complex>{0.0});
    const auto d2 = disjoint_union({one, minus});
    const WeightBracket b2 = d2->bracket(d2->parse_array("1,1;1,-1"));
    s.at_least("pm1 union: lower bound", 2 * r2, b2.lower.value, b2.lower.witness);
    s.equal("pm1 union: upper bound", 4.0, b2.upper.value);
    const auto d1 = disjoint_union({one, zero});
    const WeightBracket b1 = d1->bracket(d1->parse_array("1,1;1,0"));
    s.at_least("1/0 union: lower bound", r5, b1.lower.value, b1.lower.witness);
    s.equal("1/0 union: upper bound", 3.0, b1.upper.value);
    const WeightBracket single = d2->bracket(d2->parse_array("1,1;1,1"));
    s.equal("single-cofactor array: bracket width", 0.0, single.upper.value - single.lower.value);
    s.equal("single-cofactor array: cofactor weight", 2.0, single.lower.value);
  }

  // Alternating-block certificate.
  {
    const auto pm = parse_alphabet("pm1-min");
    double worst_gram = 0.0;
    double worst_norm = 0.0;
    for (int m = 0; m <= 12; ++m) {
      const ScalarMatrix a = hadamard_matrix(m);
      const ScalarMatrix gram = a * a.adjoint();
      const double scale = std::pow(2.0, m);
      worst_gram = std::max(worst_gram, frobenius_norm(gram - ScalarMatrix::identity(m + 1) * scale) / scale);
      worst_norm = std::max(worst_norm, std::abs(hooks.operator_norm(a) / std::sqrt(scale) - 1.0));
    }
    s.equal("A_m: Gram matrix is 2^m I (m <= 12)", 0.0, worst_gram);
    s.equal("A_m: operator norm 2^{m/2} (m <= 12)", 0.0, worst_norm);
    EnumCaps caps;
    caps.hadamard_depth = 12;
    const BrnReport brn = brn_estimate(*pm, caps);
    double worst = 0.0;
    for (const auto& step : brn.certificate) worst = std::max(worst, std::abs(step.bound - 1 / std::sqrt(step.m + 1.0)));
    s.equal("pm1 MIN(C): certificate 1/sqrt(m+1)", 0.0, worst, kTol, caps_note(caps));
    s.at_most("pm1 MIN(C): brn upper bound", 1 / std::sqrt(13.0), brn.upper_bound, caps_note(caps));
    const ArrayFreeReport f = array_free_report(*pm, 0, caps);
    s.same("pm1 MIN(C): point 1 array-free", "NOT_FREE_CERTIFIED", to_string(f.classification), caps_note(caps));
  }

  // Bounded range numbers with exact values.
  {
    EnumCaps caps;
    const auto ma = parse_alphabet("ma23");
    const BrnReport b = brn_estimate(*ma, caps);
    s.equal("MA(2,3): brn exact value", 2.0, b.exact_value.value_or(-1.0));
    for (int p = 0; p < 2; ++p) {
      s.same("MA(2,3): point " + ma->point(p).label + " array-free", "FREE_CERTIFIED",
             to_string(array_free_report(*ma, p, caps).classification), caps_note(caps));
    }
    const auto mina = parse_alphabet("one-mina");
    s.equal("mA singleton: brn exact value", 0.0, brn_estimate(*mina, caps).exact_value.value_or(-1.0));
    s.same("mA singleton: array-free", "NOT_FREE_CERTIFIED", to_string(array_free_report(*mina, 0, caps).classification),
           caps_note(caps));
    const auto one = parse_alphabet("one-min");
    s.equal("singleton MIN(C): brn exact value", 1.0, brn_estimate(*one, caps).exact_value.value_or(-1.0));
  }

  // Scaled-free quotient.
  {
    EnumCaps caps;
    const auto one = parse_alphabet("one-min");
    s.equal("singleton MIN(C): quotient norm of the generator", 1.0,
            qx_norm_estimate(*one, FreeVector::basis(1, 0), caps).value, 1e-3, caps_note(caps));
    const auto mina = parse_alphabet("one-mina");
    const NullspaceReport nm = nullspace_estimate(*mina, caps, 0.5);
    s.same("mA singleton: nullspace is everything", "1", std::to_string(nm.basis.size()), caps_note(caps));
    caps.hadamard_depth = 64;
    const auto pm = parse_alphabet("pm1-min");
    const QxEstimator est(*pm, caps);
    s.equal("pm1 MIN(C): quotient norm of the generator 1", 1.0, est.estimate(FreeVector::basis(2, 0)).value, 1e-3,
            caps_note(caps));
    s.at_most("pm1 MIN(C): quotient norm of 1 + (-1)", 2 / std::sqrt(64.0), est.estimate(FreeVector{{1.0, 1.0}}).value,
              caps_note(caps));
    const NullspaceReport np = nullspace_estimate(*pm, caps, 0.5);
    std::string basis;
    for (const auto& v : np.basis) {
      basis += "[";
      for (std::size_t k = 0; k < v.coeffs.size(); ++k) basis += (k ? "," : "") + format_complex(v.coeffs[k]);
      basis += "]";
    }
    s.same("pm1 MIN(C): nullspace", "[1,1]", basis, caps_note(caps) + " tol 0.5");
  }

  // Tensor algebra.
  {
    const std::vector<std::string> gens{"g"};
    const TensorElement e = TensorElement::parse("2@g + 3@g*g", gens);
    const WeightBound w = word_norm_upper(e, {1.0});
    s.equal("AMAX(C) tensor algebra: norm of 2g + 3g(x)g", 5.0, w.value);
    s.same("AMAX(C) tensor algebra: bound is exact", "exact", to_string(w.direction));
    const TensorMatrix c = make_tensor_matrix({ScalarMatrix{{1, 2}, {3, 4}}}, 1, 1);
    const MinScalarNorm min;
    const HaagerupResult h = haagerup_upper(c, min, min);
    s.equal("MIN(C) (x)h MIN(C): scalar norm is the operator norm", hooks.operator_norm(c.entries.slice(0)),
            h.upper.value, 1e-6);
  }
  return s.take();
}

}  // namespace mbanach
