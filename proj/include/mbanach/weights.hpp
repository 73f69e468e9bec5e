#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbanach/arrays.hpp"
#include "mbanach/linalg.hpp"

namespace mbanach {

enum class Direction { exact, lower, upper };

std::string to_string(Direction d);

struct WeightBound {
  double value = 0.0;
  Direction direction = Direction::exact;
  // Which construction produced the value (test map, submatrix, ...).
  std::string witness;
};

struct WeightBracket {
  WeightBound lower;
  WeightBound upper;
  // Notes about test maps that were considered but skipped.
  std::vector<std::string> notes;
};

// A point of an alphabet.  Scalar payloads have size 1; vector payloads
// live in ℂ^d; Θ points carry no payload.
struct Point {
  std::string label;
  std::vector<Complex> payload;
  bool theta = false;

  static Point scalar(std::string label, Complex value);
  static Point vector(std::string label, std::vector<Complex> value);
  static Point plain(std::string label);
  static Point zero_symbol(std::string label = "Theta");
};

struct WeightedSet {
  std::vector<std::string> labels;
  std::vector<double> weights;

  void validate() const;
};

// ---------------------------------------------------------------- norms on ℂ^d

class MatrixNorm {
 public:
  virtual ~MatrixNorm() = default;
  virtual int dim() const = 0;
  virtual double norm(const VectorMatrix& a) const = 0;
  virtual std::string name() const = 0;
  // False when the value comes from a local search and is only a lower bound.
  virtual bool exact() const { return true; }
};

// MIN(ℂ): the operator norm.
class MinScalarNorm final : public MatrixNorm {
 public:
  int dim() const override { return 1; }
  double norm(const VectorMatrix& a) const override;
  std::string name() const override { return "min-scalar"; }
};

// AMAX(ℂ): the trace norm.
class AmaxScalarNorm final : public MatrixNorm {
 public:
  int dim() const override { return 1; }
  double norm(const VectorMatrix& a) const override;
  std::string name() const override { return "amax-scalar"; }
};

// MIN(V) for V = ℂ^d whose dual unit ball is the absolutely convex hull of a
// finite family of functionals.  A functional may leave the phases of some
// coordinates free (e.g. the dual of ℓ¹(d) is the polydisc); those phases
// are swept on a grid and refined by golden-section search.
class PolyhedralMinNorm final : public MatrixNorm {
 public:
  struct Extreme {
    std::vector<Complex> coeffs;
    std::vector<bool> free_phase;
  };

  PolyhedralMinNorm(int dim, std::vector<Extreme> extremes);

  static PolyhedralMinNorm scalar();
  static PolyhedralMinNorm linf(int d);
  static PolyhedralMinNorm l1(int d);

  int dim() const override { return dim_; }
  double norm(const VectorMatrix& a) const override;
  std::string name() const override { return "min-finite-dim"; }
  bool exact() const override;

  const std::vector<Extreme>& extremes() const noexcept { return extremes_; }

  static constexpr double kPhaseStep = 1e-3;

 private:
  double sweep(const VectorMatrix& a, const Extreme& e) const;

  int dim_;
  std::vector<Extreme> extremes_;
};

// AMAX(ℓ¹(w)): Σ_s w_s · ‖slice_s‖_trace.
class AmaxWeightedL1Norm final : public MatrixNorm {
 public:
  explicit AmaxWeightedL1Norm(std::vector<double> weights);

  int dim() const override { return static_cast<int>(weights_.size()); }
  double norm(const VectorMatrix& a) const override;
  std::string name() const override { return "amax-weighted-l1"; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

// Matricial ℓ¹-direct sum: coordinates are split into consecutive blocks and
// the block norms are added.
class L1SumNorm final : public MatrixNorm {
 public:
  explicit L1SumNorm(std::vector<std::shared_ptr<const MatrixNorm>> blocks);

  int dim() const override { return dim_; }
  double norm(const VectorMatrix& a) const override;
  std::string name() const override { return "l1-sum"; }
  bool exact() const override;

  const std::vector<std::shared_ptr<const MatrixNorm>>& blocks() const noexcept { return blocks_; }

 private:
  std::vector<std::shared_ptr<const MatrixNorm>> blocks_;
  int dim_ = 0;
};

// ---------------------------------------------------------------- rules

class AWSet;

class WeightRule {
 public:
  virtual ~WeightRule() = default;

  virtual std::string kind() const = 0;
  // False for rules that only ever produce a bracket.
  virtual bool exact() const { return true; }
  virtual bool handles_theta() const { return false; }
  virtual void validate(const AWSet& x) const;

  // Exact value; bound-only rules throw UnsupportedError.
  virtual double value(const AWSet& x, const Array& a) const = 0;
  virtual WeightBracket bracket(const AWSet& x, const Array& a) const;
};

// The weight of an array whose entries carry payloads in V is the matrix
// norm of the payload matrix.
class InheritedRule final : public WeightRule {
 public:
  explicit InheritedRule(std::shared_ptr<const MatrixNorm> norm);

  std::string kind() const override;
  bool exact() const override { return norm_->exact(); }
  void validate(const AWSet& x) const override;
  double value(const AWSet& x, const Array& a) const override;
  WeightBracket bracket(const AWSet& x, const Array& a) const override;

  const MatrixNorm& norm() const noexcept { return *norm_; }
  std::shared_ptr<const MatrixNorm> norm_ptr() const noexcept { return norm_; }

 private:
  std::shared_ptr<const MatrixNorm> norm_;
};

// Sum of the entry weights (greatest extension of a weight function).
class MaRule final : public WeightRule {
 public:
  explicit MaRule(std::vector<double> weights);

  std::string kind() const override { return "MA"; }
  void validate(const AWSet& x) const override;
  double value(const AWSet& x, const Array& a) const override;
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

// Largest entry weight (least extension of a weight function).
class MinArrayRule final : public WeightRule {
 public:
  explicit MinArrayRule(std::vector<double> weights);

  std::string kind() const override { return "mA"; }
  void validate(const AWSet& x) const override;
  double value(const AWSet& x, const Array& a) const override;
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

// Zero-append: the weight of an array over X ∪ {Θ} is the largest weight of
// a Θ-free subarray, or 0.
class ZxRule final : public WeightRule {
 public:
  // `to_inner[i]` is the index in `inner` of point i, or -1 for Θ.
  ZxRule(std::shared_ptr<const AWSet> inner, std::vector<int> to_inner);

  std::string kind() const override { return "ZX"; }
  bool exact() const override;
  bool handles_theta() const override { return true; }
  double value(const AWSet& x, const Array& a) const override;

  const AWSet& inner() const noexcept { return *inner_; }

 private:
  std::shared_ptr<const AWSet> inner_;
  std::vector<int> to_inner_;
};

class ScaledRule final : public WeightRule {
 public:
  ScaledRule(double factor, std::shared_ptr<const AWSet> inner);

  std::string kind() const override { return "Scaled"; }
  bool exact() const override;
  bool handles_theta() const override;
  double value(const AWSet& x, const Array& a) const override;
  WeightBracket bracket(const AWSet& x, const Array& a) const override;
  double factor() const noexcept { return factor_; }
  const AWSet& inner() const noexcept { return *inner_; }

 private:
  double factor_;
  std::shared_ptr<const AWSet> inner_;
};

// Identically zero; the alphabet is typically a single zero-weight point.
class ZeroRule final : public WeightRule {
 public:
  std::string kind() const override { return "Zero"; }
  bool handles_theta() const override { return true; }
  double value(const AWSet&, const Array&) const override { return 0.0; }
};

// Disjoint union of array-weighted sets.  Its weight is a supremum over all
// admissible test maps and has no closed form, so only a certified bracket
// is produced.
class DisjointUnionRule final : public WeightRule {
 public:
  DisjointUnionRule(std::vector<std::shared_ptr<const AWSet>> cofactors, EnumCaps caps);

  std::string kind() const override { return "DisjointUnion"; }
  bool exact() const override { return false; }
  bool handles_theta() const override { return true; }
  double value(const AWSet& x, const Array& a) const override;
  WeightBracket bracket(const AWSet& x, const Array& a) const override;

  int cofactor_of(int point) const;
  int local_index(int point) const;
  const std::vector<std::shared_ptr<const AWSet>>& cofactors() const noexcept { return cofactors_; }

  // Whether the payload map into AMAX(ℂ) is admissible, and how that was
  // established ("structural" or "verified at caps ..."); empty if not.
  const std::string& amax_map_status() const noexcept { return amax_status_; }

 private:
  std::vector<std::shared_ptr<const AWSet>> cofactors_;
  std::vector<int> offsets_;
  EnumCaps caps_;
  std::string amax_status_;
};

// ---------------------------------------------------------------- AWSet

class AWSet {
 public:
  AWSet(std::vector<Point> points, std::shared_ptr<const WeightRule> rule);

  int size() const noexcept { return static_cast<int>(points_.size()); }
  const Point& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const WeightRule& rule() const noexcept { return *rule_; }
  std::shared_ptr<const WeightRule> rule_ptr() const noexcept { return rule_; }

  int index_of(const std::string& label) const;
  std::optional<int> theta_index() const noexcept { return theta_; }
  // Common payload dimension of the non-Θ points, or 0 if there are none.
  int payload_dim() const noexcept { return payload_dim_; }
  bool exact() const { return rule_->exact(); }

  void check(const Array& a) const;

  WeightBound weight(const Array& a) const;
  WeightBracket bracket(const Array& a) const;
  double exact_weight(const Array& a) const;
  // Weight of the 1×1 array [x].
  double point_weight(int x) const;

  Array parse_array(const std::string& text) const;
  std::string format_array(const Array& a) const;

 private:
  std::vector<Point> points_;
  std::shared_ptr<const WeightRule> rule_;
  std::optional<int> theta_;
  int payload_dim_ = 0;
};

// ---------------------------------------------------------------- factories

std::shared_ptr<const AWSet> make_set(std::vector<Point> points,
                                      std::shared_ptr<const WeightRule> rule);

// Scalar payloads, inherited from MIN(ℂ) / AMAX(ℂ).
std::shared_ptr<const AWSet> min_scalar_set(const std::vector<Complex>& payloads);
std::shared_ptr<const AWSet> amax_scalar_set(const std::vector<Complex>& payloads);
std::shared_ptr<const AWSet> min_scalar_set(std::vector<Point> points);
std::shared_ptr<const AWSet> amax_scalar_set(std::vector<Point> points);

std::shared_ptr<const AWSet> polyhedral_min_set(std::vector<Point> points,
                                                std::shared_ptr<const PolyhedralMinNorm> norm);
std::shared_ptr<const AWSet> weighted_l1_set(std::vector<Point> points, std::vector<double> weights);
std::shared_ptr<const AWSet> l1sum_set(std::vector<Point> points,
                                       std::vector<std::shared_ptr<const MatrixNorm>> blocks);

// Optional payloads are carried along (used by the AMAX(ℂ) test map of a
// disjoint union) but do not affect the weight.
std::shared_ptr<const AWSet> ma_set(const WeightedSet& s,
                                    std::optional<std::vector<Complex>> payloads = std::nullopt);
std::shared_ptr<const AWSet> min_array_set(const WeightedSet& s,
                                           std::optional<std::vector<Complex>> payloads = std::nullopt);

std::shared_ptr<const AWSet> zx_set(std::shared_ptr<const AWSet> x, const std::string& theta_label = "Theta");
std::shared_ptr<const AWSet> scaled_set(std::shared_ptr<const AWSet> x, double factor);
std::shared_ptr<const AWSet> zero_point_set(const std::string& label = "z");
std::shared_ptr<const AWSet> disjoint_union(std::vector<std::shared_ptr<const AWSet>> cofactors,
                                            const EnumCaps& caps = {});

// ---------------------------------------------------------------- operations

// Payload matrix of A; Θ entries are rejected.
VectorMatrix payload_matrix(const AWSet& x, const Array& a);

// Largest weight in `inner` of a hole-free subarray of `a`, or 0.  Cells
// equal to -1 are holes; every other cell indexes `inner`.  Runs over row
// subsets, pairing each with its maximal hole-free column set.
double theta_free_sup(const AWSet& inner, const Array& a);

constexpr int kMaxZxRows = 16;

WeightBound zx_weight(const AWSet& zx, const Array& a);

WeightBracket coproduct_bounds(const std::vector<std::shared_ptr<const AWSet>>& cofactors,
                               const Array& a, const EnumCaps& caps = {});

// Sum of the block weights; all arrays must share a shape.
WeightBound l1sum_norm(const std::vector<std::pair<std::shared_ptr<const AWSet>, Array>>& blocks);

WeightBound min_finitedim_norm(const PolyhedralMinNorm& v, const VectorMatrix& a);

}  // namespace mbanach
