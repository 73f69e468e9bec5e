#pragma once

#include <string>
#include <vector>

#include "mbanach/arrays.hpp"
#include "mbanach/kernels.hpp"
#include "mbanach/weights.hpp"

namespace mbanach {

// Element of the free vector space on an alphabet: one coefficient per point.
struct FreeVector {
  std::vector<Complex> coeffs;

  static FreeVector basis(int size, int point);
};

// Linear functional on the free vector space, given by its point values.
struct Functional {
  std::vector<Complex> values;

  Complex operator()(const FreeVector& v) const;
};

// ‖Σ_s φ(s)·pattern_s‖_op ≤ bound.  For an array A the slice for s is the
// indicator of the cells holding s.
struct FeasibleConstraint {
  VectorMatrix pattern;
  double bound = 0.0;
  std::string origin;

  double evaluate(const Functional& phi) const;
};

struct FeasibleSet {
  std::vector<FeasibleConstraint> constraints;
  EnumCaps caps;
  std::size_t arrays_seen = 0;
};

// One constraint per enumerated array, deduplicated up to row/column
// permutation and transposition (keeping the smallest bound), plus the
// alternating-block constraints in 2×2 factored form when the caps ask for
// them and the alphabet has points with payloads ±1.
FeasibleSet feasible_constraints(const AWSet& x, const EnumCaps& caps = {}, Execution ex = Execution::parallel);

// Canonical representative of an array under row/column permutations and
// transposition (a sound dedup key: equal keys mean equivalent arrays).
Array canonical_form(const Array& a);

struct QxOptions {
  double relative_gap = 1e-9;
  int max_iterations = 2000;
  int cuts_per_iteration = 8;
};

struct QxEstimate {
  // LP relaxation value: at least the supremum over the finite feasible set.
  double value = 0.0;
  // Value of the best feasible functional found.
  double feasible_lower = 0.0;
  Functional maximizer;
  int iterations = 0;
  std::size_t cuts = 0;
  bool low_confidence = false;
  EnumCaps caps;
  std::size_t constraints = 0;
};

// sup{|φ(v)| : φ feasible} by Kelley's cutting-plane method.  Cuts come
// from top singular pairs: Re(u*·M(ψ)·w) ≤ ‖M(ψ)‖ ≤ bound is linear in ψ.
class QxEstimator {
 public:
  QxEstimator(const AWSet& x, const EnumCaps& caps = {}, QxOptions options = {},
              Execution ex = Execution::parallel);

  QxEstimate estimate(const FreeVector& v) const;
  const FeasibleSet& feasible_set() const noexcept { return set_; }
  int points() const noexcept { return points_; }

 private:
  int points_;
  FeasibleSet set_;
  QxOptions options_;
  Execution ex_;
  std::vector<double> box_;
};

QxEstimate qx_norm_estimate(const AWSet& x, const FreeVector& v, const EnumCaps& caps = {},
                            QxOptions options = {}, Execution ex = Execution::parallel);

struct NullProbe {
  FreeVector direction;
  double estimate = 0.0;
};

struct NullspaceReport {
  std::vector<FreeVector> basis;
  std::vector<NullProbe> probes;
  double tol = 0.0;
  EnumCaps caps;
  std::string caveat;
};

constexpr int kMaxNullspacePoints = 8;
constexpr double kOptimizerTolerance = 1e-6;

// Span of the probe directions whose estimate is at most `tol`.  Directions
// have max-modulus 1 with first nonzero coefficient 1; other coefficients
// range over {0, ±1, ±i} for up to 4 points and {0, ±1} beyond.
NullspaceReport nullspace_estimate(const AWSet& x, const EnumCaps& caps, double tol,
                                   QxOptions options = {}, Execution ex = Execution::parallel);

// Σ_s w_s·|coeff_s| over the points of nonzero weight.
double weighted_l1_norm(const WeightedSet& s, const std::vector<Complex>& coeffs);

// Σ_s w_s·‖slice_s‖_trace over the points of nonzero weight.
double amax_l1_matrix_norm(const WeightedSet& s, const VectorMatrix& a);

}  // namespace mbanach
