#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbanach/kernels.hpp"
#include "mbanach/linalg.hpp"
#include "mbanach/weights.hpp"

namespace mbanach {

// m×n matrix over ℂ^p ⊗ ℂ^q; coordinate (a, b) is slice a·q + b.
struct TensorMatrix {
  VectorMatrix entries;
  int left_dim = 1;
  int right_dim = 1;

  const ScalarMatrix& slice(int a, int b) const { return entries.slice(a * right_dim + b); }
};

TensorMatrix make_tensor_matrix(std::vector<ScalarMatrix> slices, int left_dim, int right_dim);

// (A⊙B)(i,k) = Σ_j A(i,j) ⊗ B(j,k).
TensorMatrix tensor_matrix_product(const VectorMatrix& a, const VectorMatrix& b);

// φ(v, w)_k = Σ_{a,b} coeffs[(k·p + a)·q + b]·v_a·w_b.
struct BilinearMap {
  int left_dim = 1;
  int right_dim = 1;
  int out_dim = 1;
  std::vector<Complex> coeffs;

  static BilinearMap multiplication();
  static BilinearMap zero(int left_dim, int right_dim, int out_dim);
  static BilinearMap tensor(int left_dim, int right_dim);
  void validate() const;
};

// (A⊙_φB)(i,k) = Σ_j φ(A(i,j), B(j,k)).
VectorMatrix bilinear_matrix_product(const BilinearMap& phi, const VectorMatrix& a, const VectorMatrix& b);

struct FactorizationTerm {
  VectorMatrix left;
  VectorMatrix right;
};

struct HaagerupBudget {
  int restarts = 50;
  int steps = 2000;
  std::uint64_t seed = 0;
};

struct HaagerupResult {
  WeightBound upper;
  // Certified lower bound when one is known (0 otherwise).
  double lower = 0.0;
  std::string lower_reason;
  std::vector<FactorizationTerm> factorization;
  int restarts_run = 0;
};

// Upper bound on the Haagerup norm of C in V ⊗_h W from the best
// factorization found.  V and W must be MIN(ℂ), AMAX(ℂ) or AMAX(ℓ¹(w)).
HaagerupResult haagerup_upper(const TensorMatrix& c, const MatrixNorm& left, const MatrixNorm& right,
                              const HaagerupBudget& budget = {}, Execution ex = Execution::parallel);

// Norm of Σ_l A_l ⊙ B_l as the factorization's cost Σ ‖A_l‖·‖B_l‖.
double factorization_cost(const std::vector<FactorizationTerm>& terms, const MatrixNorm& left,
                          const MatrixNorm& right);
TensorMatrix factorization_product(const std::vector<FactorizationTerm>& terms);

// ---------------------------------------------------------------- tensor algebra

constexpr std::size_t kMaxWordLength = 16;

// Finite linear combination of words in the generators; each word stands
// for the elementary tensor g_{i1} ⊗ … ⊗ g_{in}.  Words are grouped by
// length through the map order.
class TensorElement {
 public:
  using Word = std::vector<int>;

  TensorElement() = default;

  void add(Word word, Complex coeff);
  const std::map<Word, Complex>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  // Words of each length, keyed by length.
  std::map<std::size_t, std::vector<Word>> grading() const;

  // `coeff@g1*g2 + coeff@g3`; a missing coefficient means 1.  Generator
  // names are looked up in `generators`.
  static TensorElement parse(const std::string& text, const std::vector<std::string>& generators);
  std::string format(const std::vector<std::string>& generators) const;

  friend bool operator==(const TensorElement&, const TensorElement&) = default;

 private:
  std::map<Word, Complex> terms_;
};

// Concatenation product, extended bilinearly.
TensorElement multiply_words(const TensorElement& e1, const TensorElement& e2);

// Σ_words |coeff|·Π‖letter‖: the ℓ¹ sum over lengths of the per-length
// triangle bounds.  Exact when every length carries at most one word,
// since the Haagerup norm is a cross norm.
WeightBound word_norm_upper(const TensorElement& e, const std::vector<double>& generator_norms);

}  // namespace mbanach
