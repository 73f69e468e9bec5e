#include "mbanach/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "mbanach/errors.hpp"
#include "mbanach/parse.hpp"

namespace mbanach {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_weights(const std::vector<double>& w, const char* what) {
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError(std::string(what) + " weights must be finite and nonnegative");
    }
  }
}

// Golden-section maximization of f on [lo, hi].
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol = 1e-12) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

std::string to_string(Direction d) {
  switch (d) {
    case Direction::exact:
      return "exact";
    case Direction::lower:
      return "lower";
    case Direction::upper:
      return "upper";
  }
  return "exact";
}

Point Point::scalar(std::string label, Complex value) { return {std::move(label), {value}, false}; }
Point Point::vector(std::string label, std::vector<Complex> value) {
  return {std::move(label), std::move(value), false};
}
Point Point::plain(std::string label) { return {std::move(label), {}, false}; }
Point Point::zero_symbol(std::string label) { return {std::move(label), {}, true}; }

void WeightedSet::validate() const {
  if (labels.size() != weights.size()) throw InputError("weighted set: label/weight count mismatch");
  check_weights(weights, "point");
}

// ---------------------------------------------------------------- norms

double MinScalarNorm::norm(const VectorMatrix& a) const {
  if (a.dim() != 1) throw InputError("MIN(C) expects scalar entries");
  return operator_norm(a.slice(0));
}

double AmaxScalarNorm::norm(const VectorMatrix& a) const {
  if (a.dim() != 1) throw InputError("AMAX(C) expects scalar entries");
  return trace_norm(a.slice(0));
}

PolyhedralMinNorm::PolyhedralMinNorm(int dim, std::vector<Extreme> extremes)
    : dim_(dim), extremes_(std::move(extremes)) {
  if (dim_ <= 0) throw InputError("dimension must be positive");
  if (extremes_.empty()) throw InputError("dual ball needs at least one extreme functional");
  for (auto& e : extremes_) {
    if (static_cast<int>(e.coeffs.size()) != dim_) throw InputError("extreme functional has wrong length");
    if (e.free_phase.empty()) e.free_phase.assign(static_cast<std::size_t>(dim_), false);
    if (static_cast<int>(e.free_phase.size()) != dim_) throw InputError("phase mask has wrong length");
    for (Complex c : e.coeffs)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("non-finite functional");
  }
}

PolyhedralMinNorm PolyhedralMinNorm::scalar() { return PolyhedralMinNorm(1, {{{1.0}, {false}}}); }

PolyhedralMinNorm PolyhedralMinNorm::linf(int d) {
  std::vector<Extreme> ext;
  for (int i = 0; i < d; ++i) {
    Extreme e{std::vector<Complex>(static_cast<std::size_t>(d), 0.0), {}};
    e.coeffs[static_cast<std::size_t>(i)] = 1.0;
    ext.push_back(std::move(e));
  }
  return PolyhedralMinNorm(d, std::move(ext));
}

PolyhedralMinNorm PolyhedralMinNorm::l1(int d) {
  Extreme e{std::vector<Complex>(static_cast<std::size_t>(d), 1.0),
            std::vector<bool>(static_cast<std::size_t>(d), true)};
  return PolyhedralMinNorm(d, {std::move(e)});
}

namespace {

// Phases that actually matter: a global phase never changes the norm, so one
// free phase can be pinned when no coefficient has a fixed phase.
std::vector<int> effective_phases(const PolyhedralMinNorm::Extreme& e) {
  std::vector<int> free;
  bool fixed_nonzero = false;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i] == Complex(0.0)) continue;
    if (e.free_phase[i]) {
      free.push_back(static_cast<int>(i));
    } else {
      fixed_nonzero = true;
    }
  }
  if (!fixed_nonzero && !free.empty()) free.erase(free.begin());
  return free;
}

}  // namespace

bool PolyhedralMinNorm::exact() const {
  for (const auto& e : extremes_)
    if (effective_phases(e).size() > 1) return false;
  return true;
}

double PolyhedralMinNorm::sweep(const VectorMatrix& a, const Extreme& e) const {
  const auto phases = effective_phases(e);
  std::vector<double> theta(static_cast<std::size_t>(dim_), 0.0);
  auto eval = [&]() {
    std::vector<Complex> f(e.coeffs);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= std::polar(1.0, theta[i]);
    return operator_norm(a.apply(f));
  };
  double best = eval();
  if (phases.empty()) return best;

  const int steps = static_cast<int>(std::ceil(kTwoPi / kPhaseStep));
  const int rounds = phases.size() == 1 ? 1 : 20;
  for (int round = 0; round < rounds; ++round) {
    const double before = best;
    for (int k : phases) {
      const double keep = theta[static_cast<std::size_t>(k)];
      double arg = keep;
      double top = best;
      for (int s = 0; s < steps; ++s) {
        theta[static_cast<std::size_t>(k)] = s * kPhaseStep;
        const double v = eval();
        if (v > top) {
          top = v;
          arg = s * kPhaseStep;
        }
      }
      auto [x, fx] = golden_max(
          [&](double t) {
            theta[static_cast<std::size_t>(k)] = t;
            return eval();
          },
          arg - kPhaseStep, arg + kPhaseStep);
      if (fx > top) {
        top = fx;
        arg = x;
      }
      theta[static_cast<std::size_t>(k)] = top > best ? arg : keep;
      best = std::max(best, top);
    }
    if (best - before <= 1e-12 * std::max(1.0, best)) break;
  }
  return best;
}

double PolyhedralMinNorm::norm(const VectorMatrix& a) const {
  if (a.dim() != dim_) throw InputError("vector payload dimension mismatch");
  double best = 0.0;
  for (const auto& e : extremes_) best = std::max(best, sweep(a, e));
  return best;
}

AmaxWeightedL1Norm::AmaxWeightedL1Norm(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("weighted l1 needs at least one coordinate");
  check_weights(weights_, "l1");
}

double AmaxWeightedL1Norm::norm(const VectorMatrix& a) const {
  if (a.dim() != dim()) throw InputError("vector payload dimension mismatch");
  double total = 0.0;
  for (int s = 0; s < dim(); ++s) {
    const double w = weights_[static_cast<std::size_t>(s)];
    if (w != 0.0) total += w * trace_norm(a.slice(s));
  }
  return total;
}

L1SumNorm::L1SumNorm(std::vector<std::shared_ptr<const MatrixNorm>> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InputError("l1-sum needs at least one block");
  for (const auto& b : blocks_) {
    if (!b) throw InputError("null block norm");
    dim_ += b->dim();
  }
}

bool L1SumNorm::exact() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& b) { return b->exact(); });
}

double L1SumNorm::norm(const VectorMatrix& a) const {
  if (a.dim() != dim_) throw InputError("vector payload dimension mismatch");
  double total = 0.0;
  int offset = 0;
  for (const auto& b : blocks_) {
    std::vector<ScalarMatrix> part(a.slices().begin() + offset, a.slices().begin() + offset + b->dim());
    total += b->norm(VectorMatrix(std::move(part)));
    offset += b->dim();
  }
  return total;
}

// ---------------------------------------------------------------- rules

void WeightRule::validate(const AWSet&) const {}

WeightBracket WeightRule::bracket(const AWSet& x, const Array& a) const {
  const double v = value(x, a);
  return {{v, Direction::exact, kind()}, {v, Direction::exact, kind()}, {}};
}

InheritedRule::InheritedRule(std::shared_ptr<const MatrixNorm> norm) : norm_(std::move(norm)) {
  if (!norm_) throw InputError("null matrix norm");
}

std::string InheritedRule::kind() const {
  const std::string n = norm_->name();
  if (n == "min-scalar") return "InheritedOpNorm";
  if (n == "amax-scalar") return "AmaxScalar";
  if (n == "min-finite-dim") return "InheritedFiniteDimMIN";
  if (n == "amax-weighted-l1") return "AmaxWeightedL1";
  if (n == "l1-sum") return "L1Sum";
  return "Inherited(" + n + ")";
}

void InheritedRule::validate(const AWSet& x) const {
  for (const Point& p : x.points()) {
    if (p.theta) continue;
    if (static_cast<int>(p.payload.size()) != norm_->dim()) {
      throw InputError("point '" + p.label + "' payload has dimension " +
                       std::to_string(p.payload.size()) + ", expected " +
                       std::to_string(norm_->dim()));
    }
    for (Complex c : p.payload)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw InputError("point '" + p.label + "' has a non-finite payload");
      }
  }
}

double InheritedRule::value(const AWSet& x, const Array& a) const {
  return norm_->norm(payload_matrix(x, a));
}

WeightBracket InheritedRule::bracket(const AWSet& x, const Array& a) const {
  const double v = value(x, a);
  if (norm_->exact()) return {{v, Direction::exact, kind()}, {v, Direction::exact, kind()}, {}};
  // Local phase search: the value is attained by a feasible functional.
  return {{v, Direction::lower, "phase search"},
          {std::numeric_limits<double>::infinity(), Direction::upper, "none"},
          {"multi-phase dual search is local; only a lower bound is certified"}};
}

MaRule::MaRule(std::vector<double> weights) : weights_(std::move(weights)) {
  check_weights(weights_, "MA");
}

void MaRule::validate(const AWSet& x) const {
  if (static_cast<int>(weights_.size()) != x.size()) throw InputError("MA: one weight per point required");
}

double MaRule::value(const AWSet&, const Array& a) const {
  double total = 0.0;
  for (int c : a.cells()) total += weights_[static_cast<std::size_t>(c)];
  return total;
}

MinArrayRule::MinArrayRule(std::vector<double> weights) : weights_(std::move(weights)) {
  check_weights(weights_, "mA");
}

void MinArrayRule::validate(const AWSet& x) const {
  if (static_cast<int>(weights_.size()) != x.size()) throw InputError("mA: one weight per point required");
}

double MinArrayRule::value(const AWSet&, const Array& a) const {
  double top = 0.0;
  for (int c : a.cells()) top = std::max(top, weights_[static_cast<std::size_t>(c)]);
  return top;
}

ZxRule::ZxRule(std::shared_ptr<const AWSet> inner, std::vector<int> to_inner)
    : inner_(std::move(inner)), to_inner_(std::move(to_inner)) {
  if (!inner_) throw InputError("null inner set");
}

bool ZxRule::exact() const { return inner_->exact(); }

double ZxRule::value(const AWSet&, const Array& a) const {
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(a.size()));
  for (int c : a.cells()) cells.push_back(to_inner_[static_cast<std::size_t>(c)]);
  return theta_free_sup(*inner_, Array(a.rows(), a.cols(), std::move(cells)));
}

ScaledRule::ScaledRule(double factor, std::shared_ptr<const AWSet> inner)
    : factor_(factor), inner_(std::move(inner)) {
  if (!std::isfinite(factor_) || factor_ <= 0.0) throw InputError("scale factor must be positive");
  if (!inner_) throw InputError("null inner set");
}

bool ScaledRule::exact() const { return inner_->exact(); }
bool ScaledRule::handles_theta() const { return inner_->rule().handles_theta(); }

double ScaledRule::value(const AWSet&, const Array& a) const {
  return factor_ * inner_->exact_weight(a);
}

WeightBracket ScaledRule::bracket(const AWSet&, const Array& a) const {
  WeightBracket b = inner_->bracket(a);
  b.lower.value *= factor_;
  b.upper.value *= factor_;
  return b;
}

// ---------------------------------------------------------------- disjoint union

namespace {

// Whether the inclusion of `x` into AMAX(ℂ) through scalar payloads is
// completely contractive for a structural reason.
bool amax_contractive_structurally(const AWSet& x) {
  const WeightRule& r = x.rule();
  if (const auto* inh = dynamic_cast<const InheritedRule*>(&r)) {
    if (inh->norm().name() == "amax-scalar") return true;
    // A single-point alphabet only has constant arrays, which are rank one,
    // so trace norm and operator norm agree.
    if (inh->norm().name() == "min-scalar" && x.size() == 1) return true;
    return false;
  }
  if (const auto* ma = dynamic_cast<const MaRule*>(&r)) {
    for (int i = 0; i < x.size(); ++i) {
      const Point& p = x.point(i);
      const double mod = p.theta ? 0.0 : std::abs(p.payload[0]);
      if (ma->weights()[static_cast<std::size_t>(i)] < mod) return false;
    }
    return true;
  }
  if (dynamic_cast<const ZeroRule*>(&r)) {
    for (const Point& p : x.points())
      if (!p.theta && p.payload[0] != Complex(0.0)) return false;
    return true;
  }
  return false;
}

Complex scalar_payload(const Point& p) { return p.theta ? Complex(0.0) : p.payload[0]; }

bool has_scalar_payloads(const AWSet& x) {
  for (const Point& p : x.points())
    if (!p.theta && p.payload.size() != 1) return false;
  return true;
}

}  // namespace

DisjointUnionRule::DisjointUnionRule(std::vector<std::shared_ptr<const AWSet>> cofactors, EnumCaps caps)
    : cofactors_(std::move(cofactors)), caps_(caps) {
  if (cofactors_.empty()) throw InputError("disjoint union needs at least one cofactor");
  int offset = 0;
  for (const auto& c : cofactors_) {
    if (!c) throw InputError("null cofactor");
    offsets_.push_back(offset);
    offset += c->size();
  }
  offsets_.push_back(offset);

  bool scalar = true;
  for (const auto& c : cofactors_) scalar = scalar && has_scalar_payloads(*c);
  if (!scalar) return;
  bool structural = true;
  for (const auto& c : cofactors_) {
    if (amax_contractive_structurally(*c)) continue;
    structural = false;
    if (!c->exact()) return;
    ArrayEnumeration stream(c->size(), caps_);
    ScalarMap payload;
    for (const Point& p : c->points()) payload.values.push_back(scalar_payload(p));
    for (std::size_t k = 0; k < stream.size(); ++k) {
      const Array a = stream.at(k);
      const double w = c->exact_weight(a);
      if (trace_norm(ampliate(payload, a)) > w + 1e-9 * std::max(1.0, w)) return;
    }
  }
  if (structural) {
    amax_status_ = "structural";
  } else {
    amax_status_ = "verified at caps " + std::to_string(caps_.max_rows) + "," +
                   std::to_string(caps_.max_cols) + "," + std::to_string(caps_.max_cells);
  }
}

int DisjointUnionRule::cofactor_of(int point) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), point);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

int DisjointUnionRule::local_index(int point) const {
  return point - offsets_[static_cast<std::size_t>(cofactor_of(point))];
}

double DisjointUnionRule::value(const AWSet&, const Array&) const {
  throw UnsupportedError("the disjoint-union weight has no closed form; request a bracket");
}

WeightBracket DisjointUnionRule::bracket(const AWSet& x, const Array& a) const {
  WeightBracket out;
  const int ncof = static_cast<int>(cofactors_.size());

  double upper = 0.0;
  std::vector<bool> present(static_cast<std::size_t>(ncof), false);
  for (int c : a.cells()) {
    const int lam = cofactor_of(c);
    present[static_cast<std::size_t>(lam)] = true;
    upper += cofactors_[static_cast<std::size_t>(lam)]->point_weight(local_index(c));
  }
  out.upper = {upper, Direction::upper, "sum of entry weights"};

  const int used = static_cast<int>(std::count(present.begin(), present.end(), true));
  double lower = 0.0;
  std::string lower_map = "zero map";

  for (int lam = 0; lam < ncof; ++lam) {
    if (!present[static_cast<std::size_t>(lam)]) continue;
    const AWSet& cof = *cofactors_[static_cast<std::size_t>(lam)];
    std::vector<int> cells;
    for (int c : a.cells()) cells.push_back(cofactor_of(c) == lam ? local_index(c) : -1);
    const Array local(a.rows(), a.cols(), std::move(cells));
    double v;
    if (used == 1) {
      // All entries come from one cofactor: the inclusion is isometric, so
      // the cofactor's own weight pins the value from both sides.
      const WeightBracket inner = cof.bracket(local);
      v = inner.lower.value;
      if (inner.upper.value < out.upper.value) {
        out.upper = {inner.upper.value, Direction::upper, "cofactor " + std::to_string(lam) + " weight"};
      }
    } else {
      v = theta_free_sup(cof, local);
    }
    if (v > lower) {
      lower = v;
      lower_map = "zero-append retraction onto cofactor " + std::to_string(lam);
    }
  }

  if (!amax_status_.empty()) {
    ScalarMap payload;
    for (const Point& p : x.points()) payload.values.push_back(scalar_payload(p));
    const double v = trace_norm(ampliate(payload, a));
    if (amax_status_ != "structural" && v > out.upper.value + 1e-9 * std::max(1.0, out.upper.value)) {
      out.notes.push_back("payload map into AMAX(C) skipped: exceeds the upper bound, so it is not "
                          "completely contractive beyond the verified caps");
    } else {
      if (amax_status_ != "structural") {
        out.notes.push_back("payload map into AMAX(C) admitted: " + amax_status_);
      }
      if (v > lower) {
        lower = v;
        lower_map = "payload map into AMAX(C)";
      }
    }
  } else {
    out.notes.push_back("payload map into AMAX(C) unavailable: payloads not scalar or inclusion not contractive");
  }

  out.lower = {lower, Direction::lower, lower_map};
  if (out.lower.value > out.upper.value + 1e-9 * std::max(1.0, out.upper.value)) {
    throw std::logic_error("disjoint-union bracket inverted: lower " + std::to_string(out.lower.value) +
                           " > upper " + std::to_string(out.upper.value));
  }
  out.lower.value = std::min(out.lower.value, out.upper.value);
  return out;
}

// ---------------------------------------------------------------- AWSet

AWSet::AWSet(std::vector<Point> points, std::shared_ptr<const WeightRule> rule)
    : points_(std::move(points)), rule_(std::move(rule)) {
  if (points_.empty()) throw InputError("alphabet must be nonempty");
  if (!rule_) throw InputError("null weight rule");
  std::set<std::string> seen;
  int dim = -1;
  bool uniform = true;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.label.empty()) throw InputError("empty point label");
    if (p.label.find_first_of(",; \t\n") != std::string::npos) {
      throw InputError("point label '" + p.label + "' contains a separator");
    }
    if (!seen.insert(p.label).second) throw InputError("duplicate point label '" + p.label + "'");
    if (p.theta) {
      if (theta_) throw InputError("at most one zero symbol per alphabet");
      theta_ = static_cast<int>(i);
      continue;
    }
    const int d = static_cast<int>(p.payload.size());
    if (dim < 0) dim = d;
    if (d != dim) uniform = false;
  }
  payload_dim_ = (uniform && dim > 0) ? dim : 0;
  rule_->validate(*this);
}

int AWSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].label == label) return static_cast<int>(i);
  if (label == "Theta" && theta_) return *theta_;
  throw InputError("unknown point label '" + label + "'");
}

void AWSet::check(const Array& a) const {
  for (int c : a.cells()) {
    if (c < 0 || c >= size()) throw InputError("array entry outside the alphabet");
    if (theta_ && c == *theta_ && !rule_->handles_theta()) {
      throw InputError("zero symbol entry under a rule without zero-symbol semantics");
    }
  }
}

WeightBound AWSet::weight(const Array& a) const {
  check(a);
  if (rule_->exact()) return {rule_->value(*this, a), Direction::exact, rule_->kind()};
  return rule_->bracket(*this, a).lower;
}

WeightBracket AWSet::bracket(const Array& a) const {
  check(a);
  return rule_->bracket(*this, a);
}

double AWSet::exact_weight(const Array& a) const {
  if (!rule_->exact()) {
    throw UnsupportedError("weight rule '" + rule_->kind() + "' only yields bounds");
  }
  check(a);
  return rule_->value(*this, a);
}

double AWSet::point_weight(int x) const {
  const Array a(1, 1, {x});
  if (rule_->exact()) return exact_weight(a);
  return bracket(a).upper.value;
}

Array AWSet::parse_array(const std::string& text) const {
  const auto rows = split(text, ';');
  if (rows.empty()) throw InputError("empty array literal");
  int ncols = -1;
  std::vector<int> cells;
  for (const auto& row : rows) {
    const auto toks = split(row, ',');
    if (toks.empty()) throw InputError("empty row in array literal");
    if (ncols < 0) ncols = static_cast<int>(toks.size());
    if (static_cast<int>(toks.size()) != ncols) throw InputError("ragged array literal");
    for (const auto& t : toks) {
      const std::string label = trim(t);
      if (label.empty()) throw InputError("empty cell in array literal");
      cells.push_back(index_of(label));
    }
  }
  Array a(static_cast<int>(rows.size()), ncols, std::move(cells));
  check(a);
  return a;
}

std::string AWSet::format_array(const Array& a) const {
  std::string out;
  for (int r = 0; r < a.rows(); ++r) {
    if (r) out += ';';
    for (int c = 0; c < a.cols(); ++c) {
      if (c) out += ',';
      const int x = a(r, c);
      out += x < 0 ? std::string("Theta") : point(x).label;
    }
  }
  return out;
}

// ---------------------------------------------------------------- factories

std::shared_ptr<const AWSet> make_set(std::vector<Point> points, std::shared_ptr<const WeightRule> rule) {
  return std::make_shared<const AWSet>(std::move(points), std::move(rule));
}

namespace {

std::string scalar_label(Complex c) { return format_complex(c); }

std::vector<Point> scalar_points(const std::vector<Complex>& payloads) {
  std::vector<Point> pts;
  for (Complex c : payloads) pts.push_back(Point::scalar(scalar_label(c), c));
  return pts;
}

std::vector<Point> weighted_points(const WeightedSet& s, const std::optional<std::vector<Complex>>& payloads) {
  s.validate();
  if (payloads && payloads->size() != s.labels.size()) throw InputError("one payload per point required");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    pts.push_back(payloads ? Point::scalar(s.labels[i], (*payloads)[i]) : Point::plain(s.labels[i]));
  }
  return pts;
}

}  // namespace

std::shared_ptr<const AWSet> min_scalar_set(const std::vector<Complex>& payloads) {
  return min_scalar_set(scalar_points(payloads));
}

std::shared_ptr<const AWSet> amax_scalar_set(const std::vector<Complex>& payloads) {
  return amax_scalar_set(scalar_points(payloads));
}

std::shared_ptr<const AWSet> min_scalar_set(std::vector<Point> points) {
  return make_set(std::move(points), std::make_shared<InheritedRule>(std::make_shared<MinScalarNorm>()));
}

std::shared_ptr<const AWSet> amax_scalar_set(std::vector<Point> points) {
  return make_set(std::move(points), std::make_shared<InheritedRule>(std::make_shared<AmaxScalarNorm>()));
}

std::shared_ptr<const AWSet> polyhedral_min_set(std::vector<Point> points,
                                                std::shared_ptr<const PolyhedralMinNorm> norm) {
  return make_set(std::move(points), std::make_shared<InheritedRule>(std::move(norm)));
}

std::shared_ptr<const AWSet> weighted_l1_set(std::vector<Point> points, std::vector<double> weights) {
  return make_set(std::move(points),
                  std::make_shared<InheritedRule>(std::make_shared<AmaxWeightedL1Norm>(std::move(weights))));
}

std::shared_ptr<const AWSet> l1sum_set(std::vector<Point> points,
                                       std::vector<std::shared_ptr<const MatrixNorm>> blocks) {
  return make_set(std::move(points),
                  std::make_shared<InheritedRule>(std::make_shared<L1SumNorm>(std::move(blocks))));
}

std::shared_ptr<const AWSet> ma_set(const WeightedSet& s, std::optional<std::vector<Complex>> payloads) {
  return make_set(weighted_points(s, payloads), std::make_shared<MaRule>(s.weights));
}

std::shared_ptr<const AWSet> min_array_set(const WeightedSet& s, std::optional<std::vector<Complex>> payloads) {
  return make_set(weighted_points(s, payloads), std::make_shared<MinArrayRule>(s.weights));
}

std::shared_ptr<const AWSet> zx_set(std::shared_ptr<const AWSet> x, const std::string& theta_label) {
  if (!x) throw InputError("null set");
  if (x->theta_index()) throw InputError("alphabet already has a zero symbol");
  std::vector<Point> pts = x->points();
  std::vector<int> to_inner;
  for (int i = 0; i < x->size(); ++i) to_inner.push_back(i);
  pts.push_back(Point::zero_symbol(theta_label));
  to_inner.push_back(-1);
  return make_set(std::move(pts), std::make_shared<ZxRule>(std::move(x), std::move(to_inner)));
}

std::shared_ptr<const AWSet> scaled_set(std::shared_ptr<const AWSet> x, double factor) {
  if (!x) throw InputError("null set");
  std::vector<Point> pts = x->points();
  return make_set(std::move(pts), std::make_shared<ScaledRule>(factor, std::move(x)));
}

std::shared_ptr<const AWSet> zero_point_set(const std::string& label) {
  return make_set({Point::scalar(label, 0.0)}, std::make_shared<ZeroRule>());
}

std::shared_ptr<const AWSet> disjoint_union(std::vector<std::shared_ptr<const AWSet>> cofactors,
                                            const EnumCaps& caps) {
  std::vector<Point> pts;
  for (const auto& c : cofactors) {
    if (!c) throw InputError("null cofactor");
    for (const Point& p : c->points()) pts.push_back(p);
  }
  return make_set(std::move(pts), std::make_shared<DisjointUnionRule>(std::move(cofactors), caps));
}

// ---------------------------------------------------------------- operations

VectorMatrix payload_matrix(const AWSet& x, const Array& a) {
  const int d = x.payload_dim();
  if (d == 0) throw InputError("alphabet points do not share a payload dimension");
  std::vector<std::vector<Complex>> slices(static_cast<std::size_t>(d),
                                           std::vector<Complex>(static_cast<std::size_t>(a.size())));
  for (int k = 0; k < a.size(); ++k) {
    const int c = a.cells()[static_cast<std::size_t>(k)];
    if (c < 0 || c >= x.size()) throw InputError("array entry outside the alphabet");
    const Point& p = x.point(c);
    if (p.theta) throw InputError("zero symbol has no payload");
    for (int s = 0; s < d; ++s) slices[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] = p.payload[static_cast<std::size_t>(s)];
  }
  std::vector<ScalarMatrix> out;
  out.reserve(static_cast<std::size_t>(d));
  for (auto& s : slices) out.emplace_back(a.rows(), a.cols(), std::move(s));
  return VectorMatrix(std::move(out));
}

double theta_free_sup(const AWSet& inner, const Array& a) {
  const int m = a.rows();
  const int n = a.cols();
  auto weigh = [&](const Array& sub) {
    return inner.exact() ? inner.exact_weight(sub) : inner.bracket(sub).lower.value;
  };
  bool any_hole = false;
  for (int c : a.cells()) any_hole = any_hole || c == -1;
  if (!any_hole) return weigh(a);
  if (m > kMaxZxRows) {
    throw ResourceError("zero-append search limited to " + std::to_string(kMaxZxRows) + " rows",
                        std::uint64_t{1} << std::min(m, 63));
  }

  std::vector<std::uint32_t> hole_rows(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c)
      if (a(r, c) == -1) hole_rows[static_cast<std::size_t>(c)] |= (1u << r);

  double best = 0.0;
  const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1u);
  std::vector<int> rows;
  std::vector<int> cols;
  for (std::uint32_t s = 1; s <= full; ++s) {
    cols.clear();
    std::uint32_t blocked = 0;
    for (int c = 0; c < n; ++c) {
      if ((hole_rows[static_cast<std::size_t>(c)] & s) == 0) {
        cols.push_back(c);
        blocked |= hole_rows[static_cast<std::size_t>(c)];
      }
    }
    if (cols.empty()) continue;
    // Rows outside s with no hole in the chosen columns could be added; the
    // larger subarray dominates, so only row-maximal subsets are weighed.
    if ((~s & full & ~blocked) != 0) continue;
    rows.clear();
    for (int r = 0; r < m; ++r)
      if (s & (1u << r)) rows.push_back(r);
    best = std::max(best, weigh(select(a, rows, cols)));
  }
  return best;
}

WeightBound zx_weight(const AWSet& zx, const Array& a) {
  if (dynamic_cast<const ZxRule*>(&zx.rule()) == nullptr) {
    throw InputError("zx_weight expects a zero-appended alphabet");
  }
  return zx.weight(a);
}

WeightBracket coproduct_bounds(const std::vector<std::shared_ptr<const AWSet>>& cofactors, const Array& a,
                               const EnumCaps& caps) {
  const auto d = disjoint_union(cofactors, caps);
  return d->bracket(a);
}

WeightBound l1sum_norm(const std::vector<std::pair<std::shared_ptr<const AWSet>, Array>>& blocks) {
  if (blocks.empty()) throw InputError("l1-sum needs at least one block");
  const int m = blocks.front().second.rows();
  const int n = blocks.front().second.cols();
  double total = 0.0;
  Direction dir = Direction::exact;
  for (const auto& [x, a] : blocks) {
    if (a.rows() != m || a.cols() != n) throw InputError("l1-sum blocks differ in shape");
    const WeightBound b = x->weight(a);
    if (b.direction != Direction::exact) dir = b.direction;
    total += b.value;
  }
  return {total, dir, "sum of block weights"};
}

WeightBound min_finitedim_norm(const PolyhedralMinNorm& v, const VectorMatrix& a) {
  return {v.norm(a), v.exact() ? Direction::exact : Direction::lower, "dual extreme points"};
}

}  // namespace mbanach
