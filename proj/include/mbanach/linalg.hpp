#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace mbanach {

using Complex = std::complex<double>;

// Dense complex m×n matrix, row-major.  Degenerate shapes are rejected and
// every entry must be finite.
class ScalarMatrix {
 public:
  ScalarMatrix(int rows, int cols);
  ScalarMatrix(int rows, int cols, std::vector<Complex> entries);
  ScalarMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ScalarMatrix identity(int n);
  static ScalarMatrix ones(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex operator()(int r, int c) const { return entries_[index(r, c)]; }
  Complex& operator()(int r, int c) { return entries_[index(r, c)]; }

  ScalarMatrix adjoint() const;
  ScalarMatrix transpose() const;

  ScalarMatrix& operator+=(const ScalarMatrix& other);
  ScalarMatrix& operator-=(const ScalarMatrix& other);
  ScalarMatrix& operator*=(Complex scale);

  friend ScalarMatrix operator+(ScalarMatrix a, const ScalarMatrix& b) { return a += b; }
  friend ScalarMatrix operator-(ScalarMatrix a, const ScalarMatrix& b) { return a -= b; }
  friend ScalarMatrix operator*(ScalarMatrix a, Complex s) { return a *= s; }
  friend ScalarMatrix operator*(Complex s, ScalarMatrix a) { return a *= s; }
  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_;
  int cols_;
  std::vector<Complex> entries_;
};

// m×n matrix with entries in ℂ^d, stored as d coordinate slices.  This is
// M_{m,n}(V) for V = ℂ^d; the norm on V lives elsewhere.
class VectorMatrix {
 public:
  explicit VectorMatrix(std::vector<ScalarMatrix> slices);
  VectorMatrix(int rows, int cols, int dim);

  int rows() const noexcept { return slices_.front().rows(); }
  int cols() const noexcept { return slices_.front().cols(); }
  int dim() const noexcept { return static_cast<int>(slices_.size()); }

  const ScalarMatrix& slice(int coord) const { return slices_.at(coord); }
  ScalarMatrix& slice(int coord) { return slices_.at(coord); }
  std::span<const ScalarMatrix> slices() const noexcept { return slices_; }

  // Scalar matrix obtained by applying the functional f ∈ (ℂ^d)* entrywise.
  ScalarMatrix apply(std::span<const Complex> functional) const;

 private:
  std::vector<ScalarMatrix> slices_;
};

// One-to-one map [j] → [target], stored as its image list (0-based).
class Injection {
 public:
  Injection(int target, std::vector<int> images);

  static Injection identity(int n);

  int domain() const noexcept { return static_cast<int>(images_.size()); }
  int target() const noexcept { return target_; }
  int operator()(int a) const { return images_.at(a); }
  std::span<const int> images() const noexcept { return images_; }

  // (this ∘ inner)(a) = this(inner(a)); requires inner.target() == domain().
  Injection after(const Injection& inner) const;

  friend bool operator==(const Injection&, const Injection&) = default;

 private:
  int target_;
  std::vector<int> images_;
};

struct SingularTriplet {
  double sigma = 0.0;
  std::vector<Complex> left;
  std::vector<Complex> right;
};

std::vector<double> singular_values(const ScalarMatrix& m);
SingularTriplet top_singular_triplet(const ScalarMatrix& m);

double operator_norm(const ScalarMatrix& m);
double trace_norm(const ScalarMatrix& m);
double frobenius_norm(const ScalarMatrix& m);

// U_α: ℂ^j → ℂ^m with U_α(e_a) = e_{α(a)}.
ScalarMatrix injection_matrix(const Injection& alpha, int m);

}  // namespace mbanach
