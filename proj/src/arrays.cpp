#include "mbanach/arrays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mbanach/errors.hpp"

namespace mbanach {
namespace {

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

std::vector<std::pair<int, int>> exhaustive_shapes(const EnumCaps& caps) {
  std::vector<std::pair<int, int>> shapes;
  for (int m = 1; m <= caps.max_rows; ++m)
    for (int n = 1; n <= caps.max_cols; ++n)
      if (m * n <= caps.max_cells) shapes.emplace_back(m, n);
  std::sort(shapes.begin(), shapes.end(), [](auto a, auto b) {
    const int sa = a.first * a.second;
    const int sb = b.first * b.second;
    return sa != sb ? sa < sb : a.first < b.first;
  });
  return shapes;
}

}  // namespace

Array::Array(int rows, int cols, std::vector<int> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows <= 0 || cols <= 0) throw InputError("array shape must be positive");
  if (cells_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InputError("array cell count does not match its shape");
  }
}

Array Array::constant(int rows, int cols, int index) {
  return Array(rows, cols,
               std::vector<int>(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                                index));
}

Array Array::transpose() const {
  std::vector<int> out(cells_.size());
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(c * rows_ + r)] = (*this)(r, c);
  return Array(cols_, rows_, std::move(out));
}

Array subarray(const Array& a, const Injection& alpha, const Injection& beta) {
  if (alpha.target() != a.rows() || beta.target() != a.cols()) {
    throw InputError("injections do not target the array's index sets");
  }
  return select(a, alpha.images(), beta.images());
}

Array select(const Array& a, std::span<const int> rows, std::span<const int> cols) {
  std::vector<int> cells;
  cells.reserve(rows.size() * cols.size());
  for (int r : rows) {
    if (r < 0 || r >= a.rows()) throw InputError("row index out of range");
    for (int c : cols) {
      if (c < 0 || c >= a.cols()) throw InputError("column index out of range");
      cells.push_back(a(r, c));
    }
  }
  return Array(static_cast<int>(rows.size()), static_cast<int>(cols.size()), std::move(cells));
}

SetMap SetMap::identity(int n) {
  SetMap out;
  out.target_size = n;
  out.images.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.images[static_cast<std::size_t>(i)] = i;
  return out;
}

Array ampliate(const SetMap& phi, const Array& a) {
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(a.size()));
  for (int x : a.cells()) {
    if (x < 0 || x >= static_cast<int>(phi.images.size())) {
      throw InputError("array entry outside the map's source");
    }
    const int y = phi.images[static_cast<std::size_t>(x)];
    if (y < 0 || y >= phi.target_size) throw InputError("map image outside its target");
    cells.push_back(y);
  }
  return Array(a.rows(), a.cols(), std::move(cells));
}

ScalarMatrix ampliate(const ScalarMap& phi, const Array& a) {
  std::vector<Complex> entries;
  entries.reserve(static_cast<std::size_t>(a.size()));
  for (int x : a.cells()) {
    if (x < 0 || x >= static_cast<int>(phi.values.size())) {
      throw InputError("array entry outside the map's source");
    }
    entries.push_back(phi.values[static_cast<std::size_t>(x)]);
  }
  return ScalarMatrix(a.rows(), a.cols(), std::move(entries));
}

SetMap compose(const SetMap& psi, const SetMap& phi) {
  if (phi.target_size != static_cast<int>(psi.images.size())) {
    throw InputError("maps do not compose");
  }
  SetMap out;
  out.target_size = psi.target_size;
  for (int y : phi.images) out.images.push_back(psi.images.at(static_cast<std::size_t>(y)));
  return out;
}

ScalarMap compose(const ScalarMap& psi, const SetMap& phi) {
  if (phi.target_size != static_cast<int>(psi.values.size())) {
    throw InputError("maps do not compose");
  }
  ScalarMap out;
  for (int y : phi.images) out.values.push_back(psi.values.at(static_cast<std::size_t>(y)));
  return out;
}

void validate(const EnumCaps& caps) {
  if (caps.max_rows <= 0 || caps.max_cols <= 0 || caps.max_cells <= 0) {
    throw InputError("caps must be positive");
  }
  if (caps.samples < 0) throw InputError("sample count must be nonnegative");
  if (caps.hadamard_depth > kMaxFactoredHadamard) {
    throw ResourceError("alternating-block depth " + std::to_string(caps.hadamard_depth) +
                            " exceeds " + std::to_string(kMaxFactoredHadamard),
                        saturating_pow(2, caps.hadamard_depth));
  }
}

std::uint64_t ArrayEnumeration::count(int alphabet_size, const EnumCaps& caps) {
  validate(caps);
  std::uint64_t total = 0;
  for (auto [m, n] : exhaustive_shapes(caps)) {
    total = saturating_add(total, saturating_pow(static_cast<std::uint64_t>(alphabet_size), m * n));
  }
  return total;
}

ArrayEnumeration::ArrayEnumeration(int alphabet_size, const EnumCaps& caps,
                                   std::vector<Array> extras)
    : alphabet_(alphabet_size), caps_(caps), extras_(std::move(extras)) {
  if (alphabet_size <= 0) throw InputError("alphabet must be nonempty");
  const std::uint64_t total = count(alphabet_size, caps);
  if (saturating_add(total, static_cast<std::uint64_t>(caps.samples)) > kMaxArrays) {
    throw ResourceError("enumeration would produce about " + std::to_string(total) +
                            " arrays; limit is " + std::to_string(kMaxArrays),
                        total);
  }
  shapes_ = exhaustive_shapes(caps);
  std::size_t offset = 0;
  for (auto [m, n] : shapes_) {
    const auto c = static_cast<std::size_t>(saturating_pow(static_cast<std::uint64_t>(alphabet_), m * n));
    blocks_.push_back({m, n, offset, c});
    offset += c;
  }
  exhaustive_ = offset;
  for (int m = 1; m <= caps.max_rows; ++m)
    for (int n = 1; n <= caps.max_cols; ++n)
      if (m * n > caps.max_cells) sample_shapes_.emplace_back(m, n);
  samples_ = sample_shapes_.empty() ? 0 : static_cast<std::size_t>(caps.samples);
  for (const Array& a : extras_) {
    for (int x : a.cells())
      if (x < 0 || x >= alphabet_) throw InputError("extra array entry outside the alphabet");
  }
}

Array ArrayEnumeration::at(std::size_t k) const {
  if (k < exhaustive_) {
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), k,
                               [](std::size_t v, const ShapeBlock& b) { return v < b.offset; });
    const ShapeBlock& b = *(it - 1);
    std::size_t code = k - b.offset;
    std::vector<int> cells(static_cast<std::size_t>(b.rows * b.cols));
    for (std::size_t i = cells.size(); i-- > 0;) {
      cells[i] = static_cast<int>(code % static_cast<std::size_t>(alphabet_));
      code /= static_cast<std::size_t>(alphabet_);
    }
    return Array(b.rows, b.cols, std::move(cells));
  }
  k -= exhaustive_;
  if (k < samples_) {
    std::seed_seq seq{static_cast<std::uint32_t>(caps_.seed & 0xffffffffU),
                      static_cast<std::uint32_t>(caps_.seed >> 32),
                      static_cast<std::uint32_t>(k & 0xffffffffU),
                      static_cast<std::uint32_t>(k >> 32), 0x5eedU};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick_shape(0, sample_shapes_.size() - 1);
    std::uniform_int_distribution<int> pick_cell(0, alphabet_ - 1);
    auto [m, n] = sample_shapes_[pick_shape(rng)];
    std::vector<int> cells(static_cast<std::size_t>(m * n));
    for (int& c : cells) c = pick_cell(rng);
    return Array(m, n, std::move(cells));
  }
  k -= samples_;
  return extras_.at(k);
}

std::optional<std::size_t> ArrayEnumeration::index_of(const Array& a) const {
  for (const ShapeBlock& b : blocks_) {
    if (b.rows != a.rows() || b.cols != a.cols()) continue;
    std::size_t code = 0;
    for (int x : a.cells()) {
      if (x < 0 || x >= alphabet_) return std::nullopt;
      code = code * static_cast<std::size_t>(alphabet_) + static_cast<std::size_t>(x);
    }
    return b.offset + code;
  }
  return std::nullopt;
}

std::vector<std::int8_t> hadamard_signs(int m) {
  if (m < 0) throw InputError("alternating-block depth must be nonnegative");
  if (m > kMaxHadamardDepth) {
    throw ResourceError("alternating-block depth " + std::to_string(m) + " exceeds " +
                            std::to_string(kMaxHadamardDepth),
                        saturating_pow(2, m) * static_cast<std::uint64_t>(m + 1));
  }
  std::vector<std::int8_t> cur{1};
  for (int level = 0; level < m; ++level) {
    const std::size_t width = std::size_t{1} << level;
    const std::size_t rows = static_cast<std::size_t>(level) + 1;
    std::vector<std::int8_t> next((rows + 1) * 2 * width);
    for (std::size_t c = 0; c < width; ++c) {
      next[c] = 1;
      next[width + c] = -1;
    }
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < width; ++c) {
        const std::int8_t v = cur[r * width + c];
        next[(r + 1) * 2 * width + c] = v;
        next[(r + 1) * 2 * width + width + c] = v;
      }
    cur = std::move(next);
  }
  return cur;
}

Array hadamard_sequence(int m, int plus_index, int minus_index) {
  const auto signs = hadamard_signs(m);
  std::vector<int> cells(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) cells[i] = signs[i] > 0 ? plus_index : minus_index;
  return Array(m + 1, 1 << m, std::move(cells));
}

ScalarMatrix hadamard_matrix(int m) {
  const auto signs = hadamard_signs(m);
  std::vector<Complex> entries(signs.begin(), signs.end());
  return ScalarMatrix(m + 1, 1 << m, std::move(entries));
}

HadamardFactors hadamard_factors(int m) {
  if (m < 0) throw InputError("alternating-block depth must be nonnegative");
  if (m > kMaxFullFactors) {
    throw ResourceError("full alternating-block factors limited to depth " + std::to_string(kMaxFullFactors));
  }
  const int n = m + 1;
  ScalarMatrix plus(n, n);
  ScalarMatrix minus(n, n);
  for (int r = 0; r < n; ++r) {
    plus(r, m) += 0.5;
    minus(r, m) += 0.5;
    plus(r, r) += 0.5;
    minus(r, r) -= 0.5;
  }
  return {plus, minus};
}

HadamardFactors hadamard_compressed_factors(int m) {
  if (m < 0) throw InputError("alternating-block depth must be nonnegative");
  if (m > kMaxFactoredHadamard) {
    throw ResourceError("factored alternating-block depth limited to " + std::to_string(kMaxFactoredHadamard));
  }
  if (m == 0) return {ScalarMatrix{{1.0}}, ScalarMatrix{{0.0}}};
  const double r = 0.5 * std::sqrt(static_cast<double>(m));
  return {ScalarMatrix{{0.5, r}, {0.0, 1.0}}, ScalarMatrix{{-0.5, r}, {0.0, 0.0}}};
}

}  // namespace mbanach
