#include "mbanach/scaledfree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "mbanach/cbmaps.hpp"
#include "mbanach/errors.hpp"
#include "mbanach/lp.hpp"

namespace mbanach {
namespace {

// Pattern of an array: slice s is the indicator of the cells holding s.
VectorMatrix indicator_pattern(const Array& a, int points) {
  VectorMatrix p(a.rows(), a.cols(), points);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) p.slice(a(r, c))(r, c) = 1.0;
  }
  return p;
}

ScalarMatrix combine(const VectorMatrix& pattern, const std::vector<Complex>& phi) {
  ScalarMatrix m(pattern.rows(), pattern.cols());
  for (int s = 0; s < pattern.dim(); ++s) {
    const Complex f = phi[static_cast<std::size_t>(s)];
    if (f != Complex(0.0)) m += pattern.slice(s) * f;
  }
  return m;
}

std::vector<int> row_of(const Array& a, int r) {
  std::vector<int> out(static_cast<std::size_t>(a.cols()));
  for (int c = 0; c < a.cols(); ++c) out[static_cast<std::size_t>(c)] = a(r, c);
  return out;
}

Array sort_rows(const Array& a) {
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < a.rows(); ++r) rows.push_back(row_of(a, r));
  std::sort(rows.begin(), rows.end());
  std::vector<int> cells;
  for (const auto& row : rows) cells.insert(cells.end(), row.begin(), row.end());
  return Array(a.rows(), a.cols(), std::move(cells));
}

Array settle(Array a) {
  // Alternate row and column sorts until neither moves anything.
  for (int round = 0; round < 64; ++round) {
    Array next = sort_rows(sort_rows(a).transpose()).transpose();
    if (next == a) break;
    a = std::move(next);
  }
  return a;
}

std::vector<double> real_row(const std::vector<Complex>& g) {
  std::vector<double> row(2 * g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    row[2 * s] = g[s].real();
    row[2 * s + 1] = -g[s].imag();
  }
  return row;
}

std::vector<Complex> to_functional(const std::vector<double>& x) {
  std::vector<Complex> phi(x.size() / 2);
  for (std::size_t s = 0; s < phi.size(); ++s) phi[s] = Complex(x[2 * s], x[2 * s + 1]);
  return phi;
}

// Complex reduced row echelon form; rows that reduce to zero are dropped.
std::vector<std::vector<Complex>> rref(std::vector<std::vector<Complex>> rows, std::size_t width) {
  constexpr double kTol = 1e-9;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < width && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    for (std::size_t r = lead; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col]) + kTol) pivot = r;
    }
    if (std::abs(rows[pivot][col]) <= kTol) continue;
    std::swap(rows[lead], rows[pivot]);
    const Complex scale = rows[lead][col];
    for (auto& v : rows[lead]) v /= scale;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead) continue;
      const Complex f = rows[r][col];
      if (f == Complex(0.0)) continue;
      for (std::size_t k = 0; k < width; ++k) rows[r][k] -= f * rows[lead][k];
    }
    ++lead;
  }
  rows.resize(lead);
  for (auto& row : rows) {
    for (auto& v : row) {
      if (std::abs(v.real()) < 1e-12) v.real(0.0);
      if (std::abs(v.imag()) < 1e-12) v.imag(0.0);
    }
  }
  return rows;
}

}  // namespace

FreeVector FreeVector::basis(int size, int point) {
  if (point < 0 || point >= size) throw InputError("basis point outside the alphabet");
  FreeVector v;
  v.coeffs.assign(static_cast<std::size_t>(size), 0.0);
  v.coeffs[static_cast<std::size_t>(point)] = 1.0;
  return v;
}

Complex Functional::operator()(const FreeVector& v) const {
  if (v.coeffs.size() != values.size()) throw InputError("functional and vector sizes differ");
  Complex sum = 0.0;
  for (std::size_t s = 0; s < values.size(); ++s) sum += values[s] * v.coeffs[s];
  return sum;
}

double FeasibleConstraint::evaluate(const Functional& phi) const {
  if (static_cast<int>(phi.values.size()) != pattern.dim()) throw InputError("functional has the wrong length");
  return operator_norm(combine(pattern, phi.values));
}

Array canonical_form(const Array& a) {
  Array direct = settle(a);
  Array flipped = settle(a.transpose());
  // Shapes differ unless square; prefer rows ≤ cols, then the smaller cells.
  if (direct.rows() != flipped.rows()) return direct.rows() < flipped.rows() ? direct : flipped;
  return std::min(direct, flipped);
}

FeasibleSet feasible_constraints(const AWSet& x, const EnumCaps& caps, Execution ex) {
  validate(caps);
  if (!x.exact()) {
    throw UnsupportedError("feasible set needs exact weights; rule '" + x.rule().kind() + "' only yields bounds");
  }
  const ArrayEnumeration stream(x.size(), caps);
  const auto weights = weigh_all(x, stream, ex);
  const auto keys = map_indices(
      stream.size(), [&](std::size_t k) { return std::optional<Array>(canonical_form(stream.at(k))); }, ex);

  std::map<Array, double> best;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    auto [it, fresh] = best.emplace(*keys[k], weights[k]);
    if (!fresh) it->second = std::min(it->second, weights[k]);
  }

  FeasibleSet out;
  out.caps = caps;
  out.arrays_seen = stream.size();
  for (const auto& [key, bound] : best) {
    out.constraints.push_back({indicator_pattern(key, x.size()), bound, x.format_array(key)});
  }

  const auto pm = plus_minus_points(x);
  if (caps.hadamard_depth >= 0 && pm) {
    const bool factored = dynamic_cast<const InheritedRule*>(&x.rule()) != nullptr &&
                          dynamic_cast<const InheritedRule*>(&x.rule())->norm().name() == "min-scalar";
    if (!factored && caps.hadamard_depth > kMaxMaterializedHadamard) {
      throw UnsupportedError("alternating-block depth above " + std::to_string(kMaxMaterializedHadamard) +
                             " needs a rule inheriting MIN(C)");
    }
    for (int m = 0; m <= caps.hadamard_depth; ++m) {
      const HadamardFactors f = hadamard_compressed_factors(m);
      VectorMatrix pattern(f.plus.rows(), f.plus.cols(), x.size());
      pattern.slice(pm->first) = f.plus;
      pattern.slice(pm->second) = f.minus;
      const double weight =
          factored ? hadamard_weight(x, m) : x.exact_weight(hadamard_sequence(m, pm->first, pm->second));
      out.constraints.push_back({std::move(pattern), weight / std::pow(2.0, 0.5 * m),
                                 "alternating-block array A_" + std::to_string(m)});
    }
  }
  return out;
}

QxEstimator::QxEstimator(const AWSet& x, const EnumCaps& caps, QxOptions options, Execution ex)
    : points_(x.size()), set_(feasible_constraints(x, caps, ex)), options_(options), ex_(ex) {
  if (!(options_.relative_gap > 0.0) || options_.max_iterations <= 0 || options_.cuts_per_iteration <= 0) {
    throw ParameterError("optimizer options must be positive");
  }
  for (int s = 0; s < points_; ++s) {
    const double w = x.point_weight(s);
    box_.push_back(w);
    box_.push_back(w);
  }
}

QxEstimate QxEstimator::estimate(const FreeVector& v) const {
  if (static_cast<int>(v.coeffs.size()) != points_) throw InputError("vector has the wrong length");
  for (Complex c : v.coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("vector entries must be finite");
  }
  // The feasible set is circled, so sup |φ(v)| = sup Re φ(v), which is
  // linear in (Re φ, Im φ).
  CutLP lp(real_row(v.coeffs), box_);

  // Zero bounds force the pattern to vanish: linear equalities, added up
  // front instead of being approached by cuts.
  std::set<std::vector<double>> equalities;
  for (const auto& con : set_.constraints) {
    if (con.bound > 0.0) continue;
    for (int r = 0; r < con.pattern.rows(); ++r) {
      for (int c = 0; c < con.pattern.cols(); ++c) {
        std::vector<Complex> re(static_cast<std::size_t>(points_));
        std::vector<Complex> im(static_cast<std::size_t>(points_));
        for (int s = 0; s < points_; ++s) {
          const Complex p = con.pattern.slice(s)(r, c);
          re[static_cast<std::size_t>(s)] = p;
          im[static_cast<std::size_t>(s)] = Complex(p.imag(), -p.real());
        }
        for (const auto& g : {re, im}) {
          auto row = real_row(g);
          if (std::all_of(row.begin(), row.end(), [](double t) { return t == 0.0; })) continue;
          equalities.insert(row);
          for (double& t : row) t = -t;
          equalities.insert(row);
        }
      }
    }
  }
  for (const auto& row : equalities) lp.add_cut(row, 0.0);

  QxEstimate est;
  est.caps = set_.caps;
  est.constraints = set_.constraints.size();
  est.low_confidence = true;
  for (int it = 1; it <= options_.max_iterations; ++it) {
    const CutLP::Solution sol = lp.solve();
    const std::vector<Complex> phi = to_functional(sol.x);
    const auto norms = map_indices(
        set_.constraints.size(),
        [&](std::size_t k) {
          const auto& con = set_.constraints[k];
          return con.bound > 0.0 ? operator_norm(combine(con.pattern, phi)) / con.bound : 0.0;
        },
        ex_);
    const double worst = std::max(1.0, *std::max_element(norms.begin(), norms.end()));
    const double upper = std::max(0.0, sol.value);

    est.iterations = it;
    est.value = upper;
    est.feasible_lower = upper / worst;
    est.maximizer.values = phi;
    for (auto& f : est.maximizer.values) f /= worst;
    if (upper - upper / worst <= options_.relative_gap * std::max(upper, 1e-300) || upper == 0.0) {
      est.low_confidence = false;
      break;
    }

    std::vector<std::size_t> order(norms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    for (int c = 0; c < options_.cuts_per_iteration && c < static_cast<int>(order.size()); ++c) {
      const auto& con = set_.constraints[order[static_cast<std::size_t>(c)]];
      if (norms[order[static_cast<std::size_t>(c)]] <= 1.0) break;
      // Re(u*·M(ψ)·w) ≤ ‖M(ψ)‖ for unit u, w, with equality at the current ψ.
      const SingularTriplet t = top_singular_triplet(combine(con.pattern, phi));
      std::vector<Complex> g(static_cast<std::size_t>(points_));
      for (int s = 0; s < points_; ++s) {
        const ScalarMatrix& p = con.pattern.slice(s);
        Complex sum = 0.0;
        for (int r = 0; r < p.rows(); ++r) {
          for (int k = 0; k < p.cols(); ++k) {
            sum += std::conj(t.left[static_cast<std::size_t>(r)]) * p(r, k) * t.right[static_cast<std::size_t>(k)];
          }
        }
        g[static_cast<std::size_t>(s)] = sum;
      }
      lp.add_cut(real_row(g), con.bound);
    }
  }
  est.cuts = lp.cuts();
  return est;
}

QxEstimate qx_norm_estimate(const AWSet& x, const FreeVector& v, const EnumCaps& caps, QxOptions options,
                            Execution ex) {
  return QxEstimator(x, caps, options, ex).estimate(v);
}

NullspaceReport nullspace_estimate(const AWSet& x, const EnumCaps& caps, double tol, QxOptions options,
                                   Execution ex) {
  if (!(tol > kOptimizerTolerance) || !std::isfinite(tol)) {
    throw ParameterError("nullspace tolerance must exceed the optimizer tolerance " +
                         std::to_string(kOptimizerTolerance));
  }
  if (x.size() > kMaxNullspacePoints) {
    throw InputError("nullspace probing supports at most " + std::to_string(kMaxNullspacePoints) + " points");
  }
  const QxEstimator estimator(x, caps, options, ex);
  const int n = x.size();
  const std::vector<Complex> digits = n <= 4 ? std::vector<Complex>{0.0, 1.0, -1.0, Complex(0, 1), Complex(0, -1)}
                                             : std::vector<Complex>{0.0, 1.0, -1.0};
  const std::size_t base = digits.size();

  std::vector<FreeVector> directions;
  std::size_t total = 1;
  for (int s = 0; s < n; ++s) total *= base;
  for (std::size_t code = 1; code < total; ++code) {
    FreeVector v;
    std::size_t rest = code;
    for (int s = 0; s < n; ++s) {
      v.coeffs.push_back(digits[rest % base]);
      rest /= base;
    }
    const auto first = std::find_if(v.coeffs.begin(), v.coeffs.end(), [](Complex c) { return c != Complex(0.0); });
    if (*first == Complex(1.0)) directions.push_back(std::move(v));
  }

  NullspaceReport r;
  r.tol = tol;
  r.caps = caps;
  r.caveat =
      "estimates over-approximate the quotient seminorm at finite caps, so this basis under-approximates the "
      "true nullspace and can only grow with the caps";
  std::vector<std::vector<Complex>> null_rows;
  for (auto& d : directions) {
    const double value = estimator.estimate(d).value;
    if (value <= tol) null_rows.push_back(d.coeffs);
    r.probes.push_back({std::move(d), value});
  }
  for (auto& row : rref(std::move(null_rows), static_cast<std::size_t>(n))) r.basis.push_back({std::move(row)});
  return r;
}

double weighted_l1_norm(const WeightedSet& s, const std::vector<Complex>& coeffs) {
  s.validate();
  if (coeffs.size() != s.weights.size()) throw InputError("one coefficient per point is required");
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (s.weights[i] != 0.0) total += s.weights[i] * std::abs(coeffs[i]);
  }
  return total;
}

double amax_l1_matrix_norm(const WeightedSet& s, const VectorMatrix& a) {
  s.validate();
  if (static_cast<std::size_t>(a.dim()) != s.weights.size()) throw InputError("one slice per point is required");
  double total = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double w = s.weights[static_cast<std::size_t>(i)];
    if (w != 0.0) total += w * trace_norm(a.slice(i));
  }
  return total;
}

}  // namespace mbanach
