#include "mbanach/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mbanach/errors.hpp"

namespace mbanach {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> view(const ScalarMatrix& m) {
  return {m.entries().data(), m.rows(), m.cols()};
}

void check_shape(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw InputError("matrix shape must be positive, got " + std::to_string(rows) +
                     "x" + std::to_string(cols));
  }
}

// JacobiSVD is the accurate choice for the tiny matrices that dominate the
// workload; BDCSVD takes over once the smaller side grows.
constexpr int kJacobiLimit = 16;

}  // namespace

ScalarMatrix::ScalarMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_shape(rows, cols);
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
}

ScalarMatrix::ScalarMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_shape(rows, cols);
  if (entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InputError("matrix entry count does not match its shape");
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InputError("matrix entries must be finite");
    }
  }
}

ScalarMatrix::ScalarMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(static_cast<int>(rows.size())),
      cols_(rows.size() == 0 ? 0 : static_cast<int>(rows.begin()->size())) {
  check_shape(rows_, cols_);
  entries_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw InputError("ragged matrix literal");
    for (const Complex& z : row) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InputError("matrix entries must be finite");
      }
      entries_.push_back(z);
    }
  }
}

ScalarMatrix ScalarMatrix::identity(int n) {
  ScalarMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ScalarMatrix ScalarMatrix::ones(int rows, int cols) {
  ScalarMatrix m(rows, cols);
  std::fill(m.entries_.begin(), m.entries_.end(), Complex(1.0));
  return m;
}

ScalarMatrix ScalarMatrix::adjoint() const {
  ScalarMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ScalarMatrix& ScalarMatrix::operator+=(const ScalarMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw InputError("shape mismatch in +");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ScalarMatrix& ScalarMatrix::operator-=(const ScalarMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw InputError("shape mismatch in -");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ScalarMatrix& ScalarMatrix::operator*=(Complex scale) {
  for (Complex& z : entries_) z *= scale;
  return *this;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InputError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()));
  }
  ScalarMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

VectorMatrix::VectorMatrix(std::vector<ScalarMatrix> slices) : slices_(std::move(slices)) {
  if (slices_.empty()) throw InputError("vector matrix needs at least one coordinate");
  for (const auto& s : slices_) {
    if (s.rows() != slices_.front().rows() || s.cols() != slices_.front().cols()) {
      throw InputError("vector matrix slices disagree in shape");
    }
  }
}

VectorMatrix::VectorMatrix(int rows, int cols, int dim) {
  if (dim <= 0) throw InputError("vector matrix needs at least one coordinate");
  slices_.assign(static_cast<std::size_t>(dim), ScalarMatrix(rows, cols));
}

ScalarMatrix VectorMatrix::apply(std::span<const Complex> functional) const {
  if (static_cast<int>(functional.size()) != dim()) {
    throw InputError("functional dimension does not match the vector matrix");
  }
  ScalarMatrix out(rows(), cols());
  for (int c = 0; c < dim(); ++c) {
    if (functional[c] == Complex(0.0)) continue;
    out += slices_[c] * functional[c];
  }
  return out;
}

Injection::Injection(int target, std::vector<int> images)
    : target_(target), images_(std::move(images)) {
  if (images_.empty()) throw InputError("injection domain must be nonempty");
  if (target_ < static_cast<int>(images_.size())) {
    throw InputError("injection domain larger than its target");
  }
  std::vector<bool> seen(static_cast<std::size_t>(target_), false);
  for (int v : images_) {
    if (v < 0 || v >= target_) {
      throw InputError("injection image " + std::to_string(v) + " outside [0," +
                       std::to_string(target_) + ")");
    }
    if (seen[v]) throw InputError("map is not one-to-one");
    seen[v] = true;
  }
}

Injection Injection::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Injection(n, std::move(images));
}

Injection Injection::after(const Injection& inner) const {
  if (inner.target() != domain()) throw InputError("injections do not compose");
  std::vector<int> images;
  images.reserve(inner.images_.size());
  for (int a : inner.images_) images.push_back(images_[a]);
  return Injection(target_, std::move(images));
}

std::vector<double> singular_values(const ScalarMatrix& m) {
  const auto a = view(m);
  Eigen::VectorXd sv;
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<RowMajorMatrix> svd(a);
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<RowMajorMatrix> svd(a);
    sv = svd.singularValues();
  }
  return {sv.data(), sv.data() + sv.size()};
}

SingularTriplet top_singular_triplet(const ScalarMatrix& m) {
  const auto a = view(m);
  SingularTriplet out;
  Eigen::VectorXd sv;
  Eigen::MatrixXcd u, v;
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<RowMajorMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    sv = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  } else {
    Eigen::BDCSVD<RowMajorMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    sv = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  }
  out.sigma = sv(0);
  out.left.assign(u.col(0).data(), u.col(0).data() + u.rows());
  out.right.assign(v.col(0).data(), v.col(0).data() + v.rows());
  return out;
}

double operator_norm(const ScalarMatrix& m) { return singular_values(m).front(); }

double trace_norm(const ScalarMatrix& m) {
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double frobenius_norm(const ScalarMatrix& m) { return view(m).norm(); }

ScalarMatrix injection_matrix(const Injection& alpha, int m) {
  if (alpha.target() != m) {
    throw InputError("injection targets [" + std::to_string(alpha.target()) +
                     "] but matrix has " + std::to_string(m) + " rows");
  }
  ScalarMatrix u(m, alpha.domain());
  for (int a = 0; a < alpha.domain(); ++a) u(alpha(a), a) = 1.0;
  return u;
}

}  // namespace mbanach
