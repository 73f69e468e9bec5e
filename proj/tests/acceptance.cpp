// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbanach/axioms.hpp"
#include "mbanach/cbmaps.hpp"
#include "mbanach/cli.hpp"
#include "mbanach/scaledfree.hpp"
#include "mbanach/tensor.hpp"

using namespace mbanach;

namespace {

// Collects the failed sub-checks of one criterion.
class Check {
 public:
  void near(const std::string& what, double expected, double computed, double tol) {
    if (!(std::abs(expected - computed) <= tol)) fail(what, "expected " + num(expected) + ", got " + num(computed));
  }
  void at_most(const std::string& what, double bound, double computed) {
    if (!(computed <= bound)) fail(what, num(computed) + " exceeds " + num(bound));
  }
  void that(const std::string& what, bool ok) {
    if (!ok) fail(what, "does not hold");
  }
  void fail(const std::string& what, const std::string& why) { failures_.push_back(what + ": " + why); }
  const std::vector<std::string>& failures() const { return failures_; }

  static std::string num(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
};

EnumCaps caps_of(int r, int c, int p, int samples = 0, int hadamard = -1) {
  EnumCaps caps;
  caps.max_rows = r;
  caps.max_cols = c;
  caps.max_cells = p;
  caps.samples = samples;
  caps.hadamard_depth = hadamard;
  return caps;
}

ScalarMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> e;
  for (int k = 0; k < rows * cols; ++k) e.emplace_back(g(rng), g(rng));
  return ScalarMatrix(rows, cols, std::move(e));
}

void golden_norms(Check& c) {
  const double r2 = std::sqrt(2.0);
  const double r5 = std::sqrt(5.0);
  const ScalarMatrix sign{{1, 1}, {1, -1}};
  const ScalarMatrix ones_zero{{1, 1}, {1, 0}};
  c.near("MIN [1 1;1 -1]", r2, operator_norm(sign), 1e-9);
  c.near("AMAX [1 1;1 -1]", 2 * r2, trace_norm(sign), 1e-9);
  const auto ma_pm = ma_set({{"1", "-1"}, {1.0, 1.0}});
  c.near("MA [1 1;1 -1]", 4.0, ma_pm->exact_weight(ma_pm->parse_array("1,1;1,-1")), 1e-9);
  c.near("MIN [1 1;1 0]", (1 + r5) / 2, operator_norm(ones_zero), 1e-9);
  c.near("AMAX [1 1;1 0]", r5, trace_norm(ones_zero), 1e-9);
  const auto ma_10 = ma_set({{"1", "0"}, {1.0, 0.0}});
  c.near("MA [1 1;1 0]", 3.0, ma_10->exact_weight(ma_10->parse_array("1,1;1,0")), 1e-9);
  const auto z = zx_set(min_scalar_set(std::vector<Complex>{1.0}));
  c.near("Z({1}) [1 1;1 Theta]", r2, zx_weight(*z, z->parse_array("1,1;1,Theta")).value, 1e-9);
  c.near("MIN I_2", 1.0, operator_norm(ScalarMatrix::identity(2)), 1e-9);
  c.near("AMAX I_2", 2.0, trace_norm(ScalarMatrix::identity(2)), 1e-9);
  auto block = std::make_shared<const MinScalarNorm>();
  const L1SumNorm sum({block, block});
  c.near("l1-sum block diagonal", 2.0,
         sum.norm(VectorMatrix({ScalarMatrix{{1, 0}, {0, 0}}, ScalarMatrix{{0, 0}, {0, 1}}})), 1e-9);
}

void hadamard_certificate(Check& c) {
  for (int m = 0; m <= 12; ++m) {
    const std::string tag = "A_" + std::to_string(m);
    const ScalarMatrix a = hadamard_matrix(m);
    c.that(tag + " shape", a.rows() == m + 1 && a.cols() == (1 << m));
    bool signs = true;
    for (Complex e : a.entries()) signs = signs && (e == Complex(1.0) || e == Complex(-1.0));
    c.that(tag + " entries are +-1", signs);
    const double scale = std::pow(2.0, m);
    c.near(tag + " Gram", 0.0, frobenius_norm(a * a.adjoint() - ScalarMatrix::identity(m + 1) * scale) / scale, 1e-9);
    c.near(tag + " norm", 1.0, operator_norm(a) / std::sqrt(scale), 1e-9);
  }
  const BrnReport brn = brn_estimate(*min_scalar_set(std::vector<Complex>{1.0, -1.0}), caps_of(4, 4, 9, 2000, 12));
  c.that("certificate length", brn.certificate.size() == 13);
  for (const auto& step : brn.certificate) {
    c.near("brn bound at m = " + std::to_string(step.m), 1 / std::sqrt(step.m + 1.0), step.bound, 1e-9);
  }
  c.at_most("brn upper bound", 1 / std::sqrt(13.0) + 1e-9, brn.upper_bound);
}

void coproduct_sandwiches(Check& c) {
  const auto one = min_scalar_set(std::vector<Complex>{1.0});
  const auto minus = min_scalar_set(std::vector<Complex>{-1.0});
  const auto zero = min_scalar_set(std::vector<Complex>{0.0});
  const auto check = [&](const std::string& tag, const WeightBracket& b, double lo, double hi) {
    c.that(tag + " lower <= upper", b.lower.value <= b.upper.value);
    c.that(tag + " lower >= " + Check::num(lo), b.lower.value >= lo - 1e-9);
    c.near(tag + " upper", hi, b.upper.value, 1e-9);
  };
  check("pm1 array", coproduct_bounds({one, minus}, Array(2, 2, {0, 0, 0, 1})), 2 * std::sqrt(2.0), 4.0);
  check("1/0 array", coproduct_bounds({one, zero}, Array(2, 2, {0, 0, 0, 1})), std::sqrt(5.0), 3.0);
  const WeightBracket single = coproduct_bounds({one, minus}, Array::constant(2, 2, 0));
  c.near("single-cofactor lower", 2.0, single.lower.value, 1e-9);
  c.near("single-cofactor upper", 2.0, single.upper.value, 1e-9);
  const auto ma = ma_set({{"a", "b"}, {2.0, 1.0}});
  const WeightBracket mixed = coproduct_bounds({ma, one}, Array(1, 2, {0, 1}));
  c.that("mixed array lower <= upper", mixed.lower.value <= mixed.upper.value);
}

// MIN(ℂ) plus 1 on 1×1 arrays.
class InflatedPointRule final : public WeightRule {
 public:
  std::string kind() const override { return "InflatedPoint"; }
  double value(const AWSet& x, const Array& a) const override {
    return operator_norm(payload_matrix(x, a).slice(0)) + (a.size() == 1 ? 1.0 : 0.0);
  }
};

void axiom_suite(Check& c) {
  const EnumCaps caps = caps_of(4, 4, 9, 2000);
  const std::vector<std::shared_ptr<const AWSet>> sets{
      min_scalar_set(std::vector<Complex>{1.0, -1.0, Complex(0, 0.5)}),
      amax_scalar_set(std::vector<Complex>{1.0, -1.0, Complex(0, 0.5)}),
      ma_set({{"a", "b", "c"}, {2.0, 3.0, 0.0}}),
      min_array_set({{"a", "b", "c"}, {2.0, 3.0, 0.0}}),
      zx_set(min_scalar_set(std::vector<Complex>{1.0, -1.0})),
      l1sum_set({Point::vector("p", {1.0, 0.0}), Point::vector("q", {0.5, -1.0}), Point::vector("r", {0.0, 2.0})},
                {std::make_shared<const MinScalarNorm>(), std::make_shared<const AmaxScalarNorm>()}),
      weighted_l1_set({Point::vector("p", {1.0, 0.0}), Point::vector("q", {1.0, 1.0}), Point::vector("r", {0.0, -2.0})},
                      {2.0, 1.0}),
  };
  for (const auto& x : sets) {
    const AxiomReport r = check_axioms(*x, caps, 100000);
    c.that(x->rule().kind() + " has no violations", r.passed());
    c.that(x->rule().kind() + " ran 1e5 sampled checks", r.sampled_checks == 100000);
  }
  const auto planted =
      make_set({Point::scalar("1", 1.0), Point::scalar("-1", -1.0)}, std::make_shared<InflatedPointRule>());
  c.that("planted fault is detected", !check_axioms(*planted, caps_of(2, 2, 4), 0).passed());
}

void scaled_free_suite(Check& c) {
  const auto one = min_scalar_set(std::vector<Complex>{1.0});
  const EnumCaps base = caps_of(4, 4, 9);
  const double brn_one = brn_estimate(*one, base).exact_value.value_or(-1.0);
  c.near("singleton estimate", 1.0, qx_norm_estimate(*one, FreeVector::basis(1, 0), base).value, 1e-3);
  c.near("singleton brn", 1.0, brn_one, 1e-12);

  const WeightedSet ws{{"a", "b"}, {2.0, 3.0}};
  const QxEstimator ma(*ma_set(ws), caps_of(2, 2, 4));
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    const FreeVector v{{Complex(g(rng), g(rng)), Complex(g(rng), g(rng))}};
    c.near("MA estimate " + std::to_string(k), weighted_l1_norm(ws, v.coeffs), ma.estimate(v).value, 1e-3);
  }

  const NullspaceReport mina = nullspace_estimate(*min_array_set({{"s"}, {1.0}}), base, 0.5);
  c.that("mA nullspace is the full space", mina.basis.size() == 1);

  // 4/sqrt(m+1) < 0.5 needs m >= 64.
  const int m = 64;
  const auto pm = min_scalar_set(std::vector<Complex>{1.0, -1.0});
  const EnumCaps deep = caps_of(4, 4, 9, 0, m);
  const NullspaceReport np = nullspace_estimate(*pm, deep, 0.5);
  c.that("pm1 nullspace is span{(1,1)}",
         np.basis.size() == 1 && np.basis[0].coeffs == std::vector<Complex>{1.0, 1.0});
  const QxEstimator est(*pm, deep);
  c.near("pm1 estimate of the generator 1", 1.0, est.estimate(FreeVector::basis(2, 0)).value, 1e-3);

  const std::vector<FreeVector> probes{FreeVector{{1.0, 1.0}}, FreeVector{{1.0, -1.0}}, FreeVector{{1.0, Complex(0, 1)}}};
  const std::vector<EnumCaps> ladder{caps_of(1, 1, 1), caps_of(2, 2, 4), caps_of(3, 3, 6), caps_of(4, 4, 9),
                                     caps_of(4, 4, 9, 0, 16), deep};
  for (std::size_t p = 0; p < probes.size(); ++p) {
    double prev = 1e300;
    for (const auto& caps : ladder) {
      const double e = qx_norm_estimate(*pm, probes[p], caps).value;
      c.at_most("estimate monotone in caps, probe " + std::to_string(p), prev + 1e-8, e);
      prev = e;
    }
  }
}

void classification(Check& c) {
  const EnumCaps caps = caps_of(4, 4, 9, 2000, 12);
  const auto ma = ma_set({{"a", "b"}, {2.0, 3.0}});
  c.near("MA brn", 2.0, brn_estimate(*ma, caps).exact_value.value_or(-1.0), 1e-12);
  for (int p = 0; p < 2; ++p) {
    c.that("MA point " + std::to_string(p) + " free",
           array_free_report(*ma, p, caps).classification == Freeness::free_certified);
  }
  const auto mina = min_array_set({{"s", "t"}, {2.0, 3.0}});
  c.near("mA brn", 0.0, brn_estimate(*mina, caps).exact_value.value_or(-1.0), 1e-12);
  for (int p = 0; p < 2; ++p) {
    c.that("mA point " + std::to_string(p) + " not free",
           array_free_report(*mina, p, caps).classification == Freeness::not_free_certified);
  }
  const auto pm = min_scalar_set(std::vector<Complex>{1.0, -1.0});
  for (int p = 0; p < 2; ++p) {
    const ArrayFreeReport r = array_free_report(*pm, p, caps);
    c.that("pm1 point " + std::to_string(p) + " not free", r.classification == Freeness::not_free_certified);
  }
  const std::vector<std::shared_ptr<const AWSet>> sets{ma, mina, pm, min_scalar_set(std::vector<Complex>{1.0}),
                                                       amax_scalar_set(std::vector<Complex>{1.0, -1.0})};
  const std::vector<EnumCaps> ladder{caps_of(1, 1, 1), caps_of(2, 2, 4), caps_of(3, 3, 6), caps_of(4, 4, 9),
                                     caps_of(4, 4, 9, 500, 8), caps};
  for (const auto& x : sets) {
    const ScalarMap c1{std::vector<Complex>(static_cast<std::size_t>(x->size()), 1.0)};
    for (const auto& k : ladder) {
      const double product =
          cbnd_estimate(c1, *x, ScalarTarget::min, k).lower_bound * brn_estimate(*x, k).upper_bound;
      c.at_most(x->rule().kind() + " constant-map cbnd x brn", 1 + 1e-9, product);
    }
  }
}

void tensor_suite(Check& c) {
  std::mt19937_64 rng(7);
  const MinScalarNorm min;
  HaagerupBudget small;
  small.restarts = 2;
  small.steps = 50;
  for (int k = 0; k < 100; ++k) {
    const ScalarMatrix m = random_matrix(1 + k % 4, 1 + (k / 4) % 4, rng);
    const double h = haagerup_upper(make_tensor_matrix({m}, 1, 1), min, min, small).upper.value;
    c.near("scalar Haagerup " + std::to_string(k), operator_norm(m), h, 1e-6);
  }
  for (int k = 0; k < 1000; ++k) {
    const ScalarMatrix a = random_matrix(3, 3, rng);
    const ScalarMatrix b = random_matrix(3, 3, rng);
    c.at_most("trace-norm submultiplicativity", trace_norm(a) * trace_norm(b) * (1 + 1e-12), trace_norm(a * b));
  }
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int k = 0; k < 20; ++k) {
    TensorElement e;
    std::vector<Complex> seq;
    for (int len = 1; len <= 6; ++len) {
      const Complex a(coeff(rng), coeff(rng));
      seq.push_back(a);
      if (a != Complex(0.0)) e.add(TensorElement::Word(static_cast<std::size_t>(len), 0), a);
    }
    double l1 = 0.0;
    for (Complex a : seq) l1 += std::abs(a);
    const WeightBound w = word_norm_upper(e, {1.0});
    c.near("word norm " + std::to_string(k), l1, w.value, 1e-12);
    c.that("word norm " + std::to_string(k) + " exact", w.direction == Direction::exact);
  }
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  HaagerupBudget budget;
  budget.restarts = 8;
  budget.steps = 400;
  for (int k = 0; k < 20; ++k) {
    const int p = 1 + k % 2;
    const int q = 1 + (k / 2) % 2;
    std::vector<double> wl(static_cast<std::size_t>(p));
    std::vector<double> wr(static_cast<std::size_t>(q));
    for (auto& w : wl) w = weight(rng);
    for (auto& w : wr) w = weight(rng);
    std::vector<ScalarMatrix> slices;
    WeightedSet product;
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < q; ++b) {
        slices.push_back(random_matrix(2, 2, rng));
        product.labels.push_back(std::to_string(a * q + b));
        product.weights.push_back(wl[static_cast<std::size_t>(a)] * wr[static_cast<std::size_t>(b)]);
      }
    }
    const double oracle = amax_l1_matrix_norm(product, VectorMatrix(slices));
    const double h =
        haagerup_upper(make_tensor_matrix(slices, p, q), AmaxWeightedL1Norm(wl), AmaxWeightedL1Norm(wr), budget)
            .upper.value;
    c.near("AMAX(l1) consistency " + std::to_string(k), oracle, h, 0.05 * oracle);
  }
}

void determinism(Check& c) {
  const std::vector<std::vector<std::string>> commands{
      {"weight", "--alphabet", "pm1-min", "--array", "1,-1;-1,1"},
      {"coproduct-bounds", "--cofactor", "min:1", "--cofactor", "min:-1", "--array", "1,1;1,-1"},
      {"axioms-check", "--alphabet", "min:1,-1,0.5", "--caps", "3,3,6", "--sampled-checks", "2000", "--seed", "5"},
      {"cbnd", "--alphabet", "pm1-min", "--map", "1=1,-1=1", "--hadamard", "8", "--seed", "3"},
      {"brn", "--alphabet", "pm1-min", "--hadamard", "12", "--seed", "4"},
      {"array-free", "--alphabet", "ma23", "--point", "a"},
      {"qx-norm", "--alphabet", "pm1-min", "--vector", "1:1,-1:1", "--hadamard", "16"},
      {"nullspace", "--alphabet", "pm1-min", "--hadamard", "64", "--caps", "2,2,4"},
      {"haagerup", "--left", "amaxl1:1,2", "--right", "amax", "--tensor", "1,2;3,4|0,1;1,0", "--seed", "11",
       "--restarts", "6", "--steps", "200"},
      {"word-norm", "--element", "2@g + 3@g*g", "--generators", "g=1"},
  };
  for (const auto& args : commands) {
    std::string first;
    for (const char* threads : {"1", "2", "4"}) {
      auto full = args;
      full.insert(full.end(), {"--threads", threads, "--format", "structured"});
      std::ostringstream out;
      std::ostringstream err;
      if (run(full, out, err) != 0) {
        c.fail(args.front(), "exited with an error: " + err.str());
        break;
      }
      auto j = nlohmann::ordered_json::parse(out.str());
      j.erase("timing");
      const std::string body = j.dump();
      if (first.empty()) {
        first = body;
      } else {
        c.that(args.front() + " identical with " + threads + " threads", body == first);
      }
    }
  }
  set_thread_count(1);
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    double limit_seconds;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "golden norm table", 1.0, golden_norms},
      {2, "alternating-block certificate", 5.0, hadamard_certificate},
      {3, "coproduct sandwiches", 0.0, coproduct_sandwiches},
      {4, "axiom suite", 60.0, axiom_suite},
      {5, "scaled-free suite", 0.0, scaled_free_suite},
      {6, "brn and array-free classification", 0.0, classification},
      {7, "tensor suite", 0.0, tensor_suite},
      {8, "determinism across thread counts", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(check);
    } catch (const std::exception& e) {
      check.fail("exception", e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (crit.limit_seconds > 0 && seconds >= crit.limit_seconds) {
      check.fail("runtime", Check::num(seconds) + " s exceeds " + Check::num(crit.limit_seconds) + " s");
    }
    const bool pass = check.failures().empty();
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%.3f s)\n", pass ? "PASS" : "FAIL", crit.number, crit.name.c_str(), seconds);
    for (const auto& f : check.failures()) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
