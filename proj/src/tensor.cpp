#include "mbanach/tensor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "mbanach/errors.hpp"
#include "mbanach/parse.hpp"

namespace mbanach {
namespace {

using CMatrix = Eigen::MatrixXcd;

CMatrix to_eigen(const ScalarMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

ScalarMatrix from_eigen(const CMatrix& m) {
  std::vector<Complex> entries;
  entries.reserve(static_cast<std::size_t>(m.size()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  }
  return ScalarMatrix(static_cast<int>(m.rows()), static_cast<int>(m.cols()), std::move(entries));
}

// The supported spaces are all AMAX(ℓ¹(w)) or MIN(ℂ) up to a scale: the
// norm of a matrix over them is Σ_a scale_a·‖slice_a‖ with ‖·‖ the
// operator norm (MIN) or the trace norm (AMAX).
struct SideKind {
  bool op = false;
  std::vector<double> scales;
};

SideKind classify(const MatrixNorm& v) {
  const std::string name = v.name();
  if (name == "min-scalar") return {true, {1.0}};
  if (name == "amax-scalar") return {false, {1.0}};
  if (name == "amax-weighted-l1") return {false, dynamic_cast<const AmaxWeightedL1Norm&>(v).weights()};
  throw UnsupportedError("Haagerup bounds support MIN(C), AMAX(C) and AMAX(l1(w)); got '" + name + "'");
}

VectorMatrix single_slice(const ScalarMatrix& m, int coord, int dim) {
  VectorMatrix out(m.rows(), m.cols(), dim);
  out.slice(coord) = m;
  return out;
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t index, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), tag};
  return std::mt19937_64(seq);
}

CMatrix random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix e(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) e(r, c) = Complex(g(rng), g(rng));
  }
  return e / e.norm();
}

struct Descent {
  double cost;
  FactorizationTerm term;
};

// Local search over C = (A·G) ⊙ (G⁻¹·B) for invertible G, by random
// multiplicative perturbations with an adaptive step.
Descent refine(const FactorizationTerm& seed, const MatrixNorm& left, const MatrixNorm& right, int restart,
               const HaagerupBudget& budget) {
  const int r = seed.left.cols();
  std::vector<CMatrix> a;
  std::vector<CMatrix> b;
  for (int s = 0; s < seed.left.dim(); ++s) a.push_back(to_eigen(seed.left.slice(s)));
  for (int s = 0; s < seed.right.dim(); ++s) b.push_back(to_eigen(seed.right.slice(s)));

  auto rng = seeded(budget.seed, static_cast<std::uint64_t>(restart), 0x4aa6U);
  CMatrix g = CMatrix::Identity(r, r);
  if (restart > 0) g += 0.3 * random_complex(r, rng);

  const auto build = [&](const CMatrix& gm) -> std::optional<FactorizationTerm> {
    const Eigen::PartialPivLU<CMatrix> lu(gm);
    if (std::abs(lu.determinant()) < 1e-12) return std::nullopt;
    const CMatrix inv = lu.inverse();
    std::vector<ScalarMatrix> ls;
    std::vector<ScalarMatrix> rs;
    for (const auto& s : a) ls.push_back(from_eigen(s * gm));
    for (const auto& s : b) rs.push_back(from_eigen(inv * s));
    return FactorizationTerm{VectorMatrix(std::move(ls)), VectorMatrix(std::move(rs))};
  };
  const auto cost = [&](const FactorizationTerm& t) { return left.norm(t.left) * right.norm(t.right); };

  auto current = build(g);
  if (!current) return {std::numeric_limits<double>::infinity(), seed};
  double best = cost(*current);
  double step = 0.5;
  for (int it = 0; it < budget.steps && step > 1e-7; ++it) {
    const CMatrix trial_g = g * (CMatrix::Identity(r, r) + step * random_complex(r, rng));
    auto trial = build(trial_g);
    const double c = trial ? cost(*trial) : std::numeric_limits<double>::infinity();
    if (c < best) {
      best = c;
      g = trial_g;
      current = std::move(trial);
      step = std::min(1.0, step * 1.5);
    } else {
      step *= 0.8;
    }
  }
  return {best, std::move(*current)};
}

}  // namespace

TensorMatrix make_tensor_matrix(std::vector<ScalarMatrix> slices, int left_dim, int right_dim) {
  if (left_dim <= 0 || right_dim <= 0 || slices.size() != static_cast<std::size_t>(left_dim * right_dim)) {
    throw InputError("tensor matrix needs left_dim·right_dim slices");
  }
  return {VectorMatrix(std::move(slices)), left_dim, right_dim};
}

TensorMatrix tensor_matrix_product(const VectorMatrix& a, const VectorMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("inner dimensions of the product do not match");
  std::vector<ScalarMatrix> slices;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) slices.push_back(a.slice(i) * b.slice(j));
  }
  return make_tensor_matrix(std::move(slices), a.dim(), b.dim());
}

BilinearMap BilinearMap::multiplication() { return {1, 1, 1, {1.0}}; }

BilinearMap BilinearMap::zero(int left_dim, int right_dim, int out_dim) {
  BilinearMap phi{left_dim, right_dim, out_dim, {}};
  phi.coeffs.assign(static_cast<std::size_t>(left_dim * right_dim * out_dim), 0.0);
  return phi;
}

BilinearMap BilinearMap::tensor(int left_dim, int right_dim) {
  BilinearMap phi = zero(left_dim, right_dim, left_dim * right_dim);
  for (int a = 0; a < left_dim; ++a) {
    for (int b = 0; b < right_dim; ++b) {
      const int k = a * right_dim + b;
      phi.coeffs[static_cast<std::size_t>((k * left_dim + a) * right_dim + b)] = 1.0;
    }
  }
  return phi;
}

void BilinearMap::validate() const {
  if (left_dim <= 0 || right_dim <= 0 || out_dim <= 0) throw InputError("bilinear map dimensions must be positive");
  if (coeffs.size() != static_cast<std::size_t>(left_dim * right_dim * out_dim)) {
    throw InputError("bilinear map has the wrong number of coefficients");
  }
}

VectorMatrix bilinear_matrix_product(const BilinearMap& phi, const VectorMatrix& a, const VectorMatrix& b) {
  phi.validate();
  if (a.dim() != phi.left_dim || b.dim() != phi.right_dim) throw InputError("bilinear map does not fit the matrices");
  const TensorMatrix t = tensor_matrix_product(a, b);
  VectorMatrix out(a.rows(), b.cols(), phi.out_dim);
  for (int k = 0; k < phi.out_dim; ++k) {
    for (int i = 0; i < phi.left_dim; ++i) {
      for (int j = 0; j < phi.right_dim; ++j) {
        const Complex c = phi.coeffs[static_cast<std::size_t>((k * phi.left_dim + i) * phi.right_dim + j)];
        if (c != Complex(0.0)) out.slice(k) += t.slice(i, j) * c;
      }
    }
  }
  return out;
}

double factorization_cost(const std::vector<FactorizationTerm>& terms, const MatrixNorm& left,
                          const MatrixNorm& right) {
  double total = 0.0;
  for (const auto& t : terms) total += left.norm(t.left) * right.norm(t.right);
  return total;
}

TensorMatrix factorization_product(const std::vector<FactorizationTerm>& terms) {
  if (terms.empty()) throw InputError("empty factorization");
  TensorMatrix sum = tensor_matrix_product(terms.front().left, terms.front().right);
  for (std::size_t l = 1; l < terms.size(); ++l) {
    const TensorMatrix t = tensor_matrix_product(terms[l].left, terms[l].right);
    if (t.left_dim != sum.left_dim || t.right_dim != sum.right_dim || t.entries.rows() != sum.entries.rows() ||
        t.entries.cols() != sum.entries.cols()) {
      throw InputError("factorization terms have different shapes");
    }
    for (int s = 0; s < sum.entries.dim(); ++s) sum.entries.slice(s) += t.entries.slice(s);
  }
  return sum;
}

HaagerupResult haagerup_upper(const TensorMatrix& c, const MatrixNorm& left, const MatrixNorm& right,
                              const HaagerupBudget& budget, Execution ex) {
  const SideKind lk = classify(left);
  const SideKind rk = classify(right);
  if (left.dim() != c.left_dim || right.dim() != c.right_dim) {
    throw InputError("tensor matrix does not match the component spaces");
  }
  if (budget.restarts < 0 || budget.steps < 0) throw ParameterError("search budget must be nonnegative");
  const int m = c.entries.rows();
  const int n = c.entries.cols();
  const int p = c.left_dim;
  const int q = c.right_dim;

  HaagerupResult res;
  // Slice (a, b) alone: ‖C_ab‖ ≤ Σ ‖A_a‖·‖B_b‖ ≤ Σ ‖A_l‖‖B_l‖ / (scale_a·scale'_b),
  // with ‖A_a B_b‖_1 ≤ ‖A_a‖_1‖B_b‖_op when a trace norm is involved.
  const bool both_op = lk.op && rk.op;
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < q; ++b) {
      const double sa = lk.scales[static_cast<std::size_t>(a)];
      const double sb = rk.scales[static_cast<std::size_t>(b)];
      if (sa <= 0.0 || sb <= 0.0) continue;
      const ScalarMatrix& s = c.slice(a, b);
      const double v = sa * sb * (both_op ? operator_norm(s) : trace_norm(s));
      if (v > res.lower) {
        res.lower = v;
        res.lower_reason = both_op ? "operator norm of a coordinate slice" : "trace norm of a coordinate slice";
      }
    }
  }

  // Per-slice candidates: identity on either side, SVD split, rank-one sum.
  std::vector<FactorizationTerm> chosen;
  double total = 0.0;
  std::string how;
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < q; ++b) {
      const ScalarMatrix& s = c.slice(a, b);
      if (frobenius_norm(s) == 0.0) continue;
      std::vector<std::pair<std::string, std::vector<FactorizationTerm>>> cands;
      cands.push_back({"identity left", {{single_slice(ScalarMatrix::identity(m), a, p), single_slice(s, b, q)}}});
      cands.push_back({"identity right", {{single_slice(s, a, p), single_slice(ScalarMatrix::identity(n), b, q)}}});

      Eigen::JacobiSVD<CMatrix> svd(to_eigen(s), Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sig = svd.singularValues();
      int rank = 0;
      while (rank < sig.size() && sig(rank) > 1e-14 * sig(0)) ++rank;
      const CMatrix u = svd.matrixU().leftCols(rank);
      const CMatrix v = svd.matrixV().leftCols(rank);
      const Eigen::VectorXd root = sig.head(rank).cwiseSqrt();
      cands.push_back({"SVD split",
                       {{single_slice(from_eigen(u * root.asDiagonal()), a, p),
                         single_slice(from_eigen(root.asDiagonal() * v.adjoint()), b, q)}}});
      std::vector<FactorizationTerm> ones;
      for (int k = 0; k < rank; ++k) {
        ones.push_back({single_slice(from_eigen(u.col(k) * sig(k)), a, p),
                        single_slice(from_eigen(v.col(k).adjoint()), b, q)});
      }
      cands.push_back({"rank-one terms", std::move(ones)});

      std::size_t pick = 0;
      double pick_cost = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cands.size(); ++k) {
        const double cost = factorization_cost(cands[k].second, left, right);
        if (cost < pick_cost * (1 - 1e-12)) {
          pick_cost = cost;
          pick = k;
        }
      }
      total += pick_cost;
      if (how.empty()) {
        how = cands[pick].first;
      } else if (how != cands[pick].first) {
        how = "mixed per-slice factorizations";
      }
      for (auto& t : cands[pick].second) chosen.push_back(std::move(t));
    }
  }
  if (chosen.empty()) {
    res.upper = {0.0, Direction::upper, "zero tensor"};
    return res;
  }
  res.factorization = chosen;
  res.upper = {total, Direction::upper, how};

  // Refinement from a single term: balanced concatenation of the chosen terms.
  const double slack = 1e-12 * std::max(1.0, res.lower);
  if (total > res.lower + slack && budget.restarts > 0) {
    int inner = 0;
    for (const auto& t : chosen) inner += t.left.cols();
    std::vector<ScalarMatrix> ls(static_cast<std::size_t>(p), ScalarMatrix(m, inner));
    std::vector<ScalarMatrix> rs(static_cast<std::size_t>(q), ScalarMatrix(inner, n));
    int offset = 0;
    for (const auto& t : chosen) {
      const double nl = left.norm(t.left);
      const double nr = right.norm(t.right);
      const double scale = nl > 0.0 && nr > 0.0 ? std::sqrt(nr / nl) : 1.0;
      for (int a = 0; a < p; ++a) {
        for (int i = 0; i < m; ++i) {
          for (int k = 0; k < t.left.cols(); ++k) ls[static_cast<std::size_t>(a)](i, offset + k) = t.left.slice(a)(i, k) * scale;
        }
      }
      for (int b = 0; b < q; ++b) {
        for (int k = 0; k < t.right.rows(); ++k) {
          for (int j = 0; j < n; ++j) rs[static_cast<std::size_t>(b)](offset + k, j) = t.right.slice(b)(k, j) / scale;
        }
      }
      offset += t.left.cols();
    }
    const FactorizationTerm seed{VectorMatrix(std::move(ls)), VectorMatrix(std::move(rs))};
    const auto runs = map_indices(
        static_cast<std::size_t>(budget.restarts),
        [&](std::size_t k) { return std::optional<Descent>(refine(seed, left, right, static_cast<int>(k), budget)); },
        ex);
    res.restarts_run = budget.restarts;
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k) {
      if (runs[k]->cost < runs[best]->cost) best = k;
    }
    if (runs[best]->cost < total) {
      res.upper = {runs[best]->cost, Direction::upper, "refined single-term factorization"};
      res.factorization = {runs[best]->term};
    }
  }
  if (res.upper.value < res.lower) {
    // Rounding only: the search can never beat a certified lower bound.
    res.upper.value = res.lower;
  }
  return res;
}

// ---------------------------------------------------------------- tensor algebra

void TensorElement::add(Word word, Complex coeff) {
  if (word.empty()) throw InputError("words must have at least one letter");
  if (word.size() > kMaxWordLength) {
    throw ResourceError("word length " + std::to_string(word.size()) + " exceeds " + std::to_string(kMaxWordLength),
                        word.size());
  }
  for (int g : word) {
    if (g < 0) throw InputError("generator indices must be nonnegative");
  }
  if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag())) throw InputError("coefficients must be finite");
  auto it = terms_.find(word);
  if (it == terms_.end()) {
    if (coeff != Complex(0.0)) terms_.emplace(std::move(word), coeff);
    return;
  }
  it->second += coeff;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

std::map<std::size_t, std::vector<TensorElement::Word>> TensorElement::grading() const {
  std::map<std::size_t, std::vector<Word>> out;
  for (const auto& [w, c] : terms_) out[w.size()].push_back(w);
  return out;
}

TensorElement TensorElement::parse(const std::string& text, const std::vector<std::string>& generators) {
  TensorElement e;
  const std::string body = trim(text);
  if (body.empty() || body == "0") return e;
  // Split on '+' at top level; '+' inside a coefficient is wrapped in
  // parentheses, e.g. (1+2i)@g.
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0 && !trim(cur).empty() && trim(cur).back() != '@') {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
  }
  parts.push_back(cur);
  for (const auto& raw : parts) {
    const std::string term = trim(raw);
    if (term.empty()) throw InputError("empty term in tensor literal");
    const auto at = term.find('@');
    Complex coeff = 1.0;
    std::string word_text = term;
    if (at != std::string::npos) {
      std::string c = trim(term.substr(0, at));
      if (c.size() >= 2 && c.front() == '(' && c.back() == ')') c = c.substr(1, c.size() - 2);
      coeff = parse_complex(c);
      word_text = term.substr(at + 1);
    }
    Word word;
    for (const auto& letter : split(word_text, '*')) {
      const std::string name = trim(letter);
      const auto it = std::find(generators.begin(), generators.end(), name);
      if (it == generators.end()) throw InputError("unknown generator '" + name + "'");
      word.push_back(static_cast<int>(it - generators.begin()));
    }
    e.add(std::move(word), coeff);
  }
  return e;
}

std::string TensorElement::format(const std::vector<std::string>& generators) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [len, words] : grading()) {
    for (const auto& w : words) {
      if (!out.empty()) out += " + ";
      const Complex c = terms_.at(w);
      out += c.imag() == 0.0 ? format_complex(c) + "@" : "(" + format_complex(c) + ")@";
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += '*';
        const auto g = static_cast<std::size_t>(w[k]);
        out += g < generators.size() ? generators[g] : "g" + std::to_string(g);
      }
    }
  }
  return out;
}

TensorElement multiply_words(const TensorElement& e1, const TensorElement& e2) {
  TensorElement out;
  for (const auto& [w1, c1] : e1.terms()) {
    for (const auto& [w2, c2] : e2.terms()) {
      TensorElement::Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add(std::move(w), c1 * c2);
    }
  }
  return out;
}

WeightBound word_norm_upper(const TensorElement& e, const std::vector<double>& generator_norms) {
  for (double g : generator_norms) {
    if (!std::isfinite(g) || g < 0.0) throw InputError("generator norms must be finite and nonnegative");
  }
  double total = 0.0;
  bool exact = true;
  for (const auto& [len, words] : e.grading()) {
    if (words.size() > 1) exact = false;
    for (const auto& w : words) {
      double prod = std::abs(e.terms().at(w));
      for (int g : w) {
        if (static_cast<std::size_t>(g) >= generator_norms.size()) throw InputError("generator without a norm");
        prod *= generator_norms[static_cast<std::size_t>(g)];
      }
      total += prod;
    }
  }
  if (exact) return {total, Direction::exact, "one elementary tensor per length"};
  return {total, Direction::upper, "triangle bound per length"};
}

}  // namespace mbanach
