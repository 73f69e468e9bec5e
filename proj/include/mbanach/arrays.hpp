#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbanach/linalg.hpp"

namespace mbanach {

// m×n array of alphabet indices, row-major.  The index -1 is reserved as a
// hole marker inside the zero-append search and never appears in user input.
class Array {
 public:
  Array(int rows, int cols, std::vector<int> cells);

  static Array constant(int rows, int cols, int index);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int size() const noexcept { return rows_ * cols_; }
  std::span<const int> cells() const noexcept { return cells_; }

  int operator()(int r, int c) const { return cells_[static_cast<std::size_t>(r * cols_ + c)]; }

  Array transpose() const;

  friend bool operator==(const Array&, const Array&) = default;
  friend auto operator<=>(const Array&, const Array&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<int> cells_;
};

// Entry (a,b) of the result is A(α(a), β(b)).
Array subarray(const Array& a, const Injection& alpha, const Injection& beta);

// Rows/columns kept in the given order; cheaper than building injections.
Array select(const Array& a, std::span<const int> rows, std::span<const int> cols);

// Point map into ℂ: one value per source index.
struct ScalarMap {
  std::vector<Complex> values;
};

// Point map into another alphabet: one target index per source index.
struct SetMap {
  std::vector<int> images;
  int target_size = 0;

  static SetMap identity(int n);
};

Array ampliate(const SetMap& phi, const Array& a);
ScalarMatrix ampliate(const ScalarMap& phi, const Array& a);

// (ψ ∘ φ) as point maps.
SetMap compose(const SetMap& psi, const SetMap& phi);
ScalarMap compose(const ScalarMap& psi, const SetMap& phi);

struct EnumCaps {
  int max_rows = 4;
  int max_cols = 4;
  int max_cells = 9;
  int samples = 2000;
  std::uint64_t seed = 0;
  // Depth of the ±1 alternating-block family appended to the stream; -1 off.
  int hadamard_depth = -1;

  friend bool operator==(const EnumCaps&, const EnumCaps&) = default;
};

void validate(const EnumCaps& caps);

// Deterministic, random-access stream of arrays over an alphabet of
// `alphabet_size` points.  Order: every shape with m ≤ R, n ≤ C, mn ≤ P
// (sorted by mn, then m) in lexicographic cell order; then `samples`
// uniformly random arrays of shapes m ≤ R, n ≤ C, mn > P; then any extras.
// Sample k depends only on (seed, k), so any slice can be generated
// independently of the others.
class ArrayEnumeration {
 public:
  ArrayEnumeration(int alphabet_size, const EnumCaps& caps, std::vector<Array> extras = {});

  static constexpr std::uint64_t kMaxArrays = 1'000'000'000ULL;

  // Number of exhaustively enumerated arrays under `caps`; saturates at
  // UINT64_MAX on overflow.
  static std::uint64_t count(int alphabet_size, const EnumCaps& caps);

  std::size_t size() const noexcept { return exhaustive_ + samples_ + extras_.size(); }
  std::size_t exhaustive_size() const noexcept { return exhaustive_; }
  std::size_t sample_size() const noexcept { return samples_; }
  std::span<const Array> extras() const noexcept { return extras_; }

  Array at(std::size_t k) const;

  // Position of an array in the exhaustive part, if it belongs there.
  std::optional<std::size_t> index_of(const Array& a) const;

  const std::vector<std::pair<int, int>>& shapes() const noexcept { return shapes_; }

 private:
  struct ShapeBlock {
    int rows;
    int cols;
    std::size_t offset;
    std::size_t count;
  };

  int alphabet_;
  EnumCaps caps_;
  std::vector<ShapeBlock> blocks_;
  std::vector<std::pair<int, int>> shapes_;
  std::vector<std::pair<int, int>> sample_shapes_;
  std::size_t exhaustive_ = 0;
  std::size_t samples_ = 0;
  std::vector<Array> extras_;
};

// Sign pattern of the recursive block family: A_0 = [1],
// A_{m+1} = [J −J; A_m A_m].  Shape (m+1)×2^m, row-major, entries ±1.
std::vector<std::int8_t> hadamard_signs(int m);

// A_m over an alphabet, with +1 ↦ plus_index and −1 ↦ minus_index.
Array hadamard_sequence(int m, int plus_index, int minus_index);

ScalarMatrix hadamard_matrix(int m);

// A_m has orthogonal rows (A_m A_m* = 2^m I) and an all-ones last row, so
// the cell indicators factor through it: [A_m = +1] = P_plus·A_m and
// [A_m = −1] = P_minus·A_m with P_± = (1·e_lastᵀ ± I)/2.  Any pattern
// a·[A_m = +1] + b·[A_m = −1] therefore has operator norm
// 2^{m/2}·‖a·P_plus + b·P_minus‖, which stays computable for depths whose
// arrays are far too wide to build.
struct HadamardFactors {
  ScalarMatrix plus;
  ScalarMatrix minus;
};

HadamardFactors hadamard_factors(int m);

// Same norms from 2×2 matrices (1×1 at m = 0): a·P_plus + b·P_minus equals
// d·I except in its last column, so it acts as d on every vector outside
// span{ones over the first m coordinates, e_last}.  On that plane it is
// [[d, c·sqrt(m)], [0, c + d]] with c = (a+b)/2, d = (a−b)/2, and that
// block's norm is at least |d|.
HadamardFactors hadamard_compressed_factors(int m);

constexpr int kMaxFullFactors = 511;
constexpr int kMaxFactoredHadamard = 4096;

constexpr int kMaxHadamardDepth = 20;
// Largest depth whose arrays are materialized for weight evaluation.
constexpr int kMaxMaterializedHadamard = 16;

}  // namespace mbanach
