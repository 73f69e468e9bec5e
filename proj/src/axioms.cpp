#include "mbanach/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mbanach/errors.hpp"

namespace mbanach {
namespace {

struct Range {
  double lo;
  double hi;
};

Range weigh(const AWSet& x, const Array& a) {
  if (x.exact()) {
    const double v = x.exact_weight(a);
    return {v, v};
  }
  const WeightBracket b = x.bracket(a);
  return {b.lower.value, b.upper.value};
}

bool exceeds(double lhs, double rhs) { return lhs > rhs + kAxiomTolerance * std::max(1.0, std::abs(rhs)); }

// All one-to-one maps [j] → [m] for 1 ≤ j ≤ m, as image lists.
std::vector<std::vector<int>> all_injections(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == m) return;
    for (int v = 0; v < m; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec);
  return out;
}

std::vector<int> random_injection(int m, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const int j = std::uniform_int_distribution<int>(1, m)(rng);
  perm.resize(static_cast<std::size_t>(j));
  return perm;
}

std::vector<int> all_of(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::pair<std::vector<int>, std::vector<int>> split_by_mask(int n, std::uint64_t mask) {
  std::vector<int> in;
  std::vector<int> out;
  for (int i = 0; i < n; ++i) (mask >> i & 1U ? in : out).push_back(i);
  return {in, out};
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t index, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), tag};
  return std::mt19937_64(seq);
}

class Checker {
 public:
  Checker(const AWSet& x, const ArrayEnumeration& stream, const std::vector<Range>& cache)
      : x_(x), stream_(stream), cache_(cache) {}

  Range lookup(const Array& a) const {
    if (auto k = stream_.index_of(a)) return cache_[*k];
    return weigh(x_, a);
  }

  void axiom1(const Array& a, Range w, std::vector<AxiomViolation>& out, bool sampled) const {
    const bool bad = !std::isfinite(w.lo) || !std::isfinite(w.hi) || w.lo < 0.0;
    if (bad) out.push_back({1, a, {}, {}, w.lo, 0.0, sampled});
  }

  void axiom2(const Array& a, Range w, const std::vector<int>& rows, const std::vector<int>& cols,
              std::vector<AxiomViolation>& out, bool sampled) const {
    const Range s = lookup(select(a, rows, cols));
    if (exceeds(s.lo, w.hi)) out.push_back({2, a, rows, cols, s.lo, w.hi, sampled});
  }

  void row_split(const Array& a, Range w, std::uint64_t mask, std::vector<AxiomViolation>& out,
                 bool sampled) const {
    auto [in, rest] = split_by_mask(a.rows(), mask);
    const auto cols = all_of(a.cols());
    const double rhs = lookup(select(a, in, cols)).hi + lookup(select(a, rest, cols)).hi;
    if (exceeds(w.lo, rhs)) out.push_back({3, a, in, {}, w.lo, rhs, sampled});
  }

  void col_split(const Array& a, Range w, std::uint64_t mask, std::vector<AxiomViolation>& out,
                 bool sampled) const {
    auto [in, rest] = split_by_mask(a.cols(), mask);
    const auto rows = all_of(a.rows());
    const double rhs = lookup(select(a, rows, in)).hi + lookup(select(a, rows, rest)).hi;
    if (exceeds(w.lo, rhs)) out.push_back({4, a, {}, in, w.lo, rhs, sampled});
  }

 private:
  const AWSet& x_;
  const ArrayEnumeration& stream_;
  const std::vector<Range>& cache_;
};

struct Outcome {
  std::vector<AxiomViolation> violations;
  std::uint64_t checks = 0;
};

}  // namespace

AxiomReport check_axioms(const AWSet& x, const EnumCaps& caps, std::uint64_t sampled_checks, Execution ex) {
  validate(caps);
  if (caps.max_rows > 20 || caps.max_cols > 20) {
    throw ResourceError("axiom checks enumerate row/column subsets; caps above 20 are refused");
  }
  const ArrayEnumeration stream(x.size(), caps);
  AxiomReport report;
  report.rule = x.rule().kind();
  report.caps = caps;

  const std::size_t nex = stream.exhaustive_size();
  const std::vector<Range> cache =
      map_indices(nex, [&](std::size_t k) { return weigh(x, stream.at(k)); }, ex);
  const Checker checker(x, stream, cache);

  std::vector<std::vector<std::vector<int>>> injections(
      static_cast<std::size_t>(std::max(caps.max_rows, caps.max_cols)) + 1);
  for (std::size_t m = 1; m < injections.size(); ++m) injections[m] = all_injections(static_cast<int>(m));

  auto exhaustive = map_indices(
      nex,
      [&](std::size_t k) {
        Outcome o;
        const Array a = stream.at(k);
        const Range w = cache[k];
        const int m = a.rows();
        const int n = a.cols();
        checker.axiom1(a, w, o.violations, false);
        ++o.checks;
        const auto& ri = injections[static_cast<std::size_t>(m)];
        const auto& ci = injections[static_cast<std::size_t>(n)];
        const std::uint64_t pairs = static_cast<std::uint64_t>(ri.size()) * ci.size();
        if (pairs <= AxiomReport::kPairBudget) {
          for (const auto& r : ri)
            for (const auto& c : ci) checker.axiom2(a, w, r, c, o.violations, false);
          o.checks += pairs;
        } else {
          auto rng = seeded(caps.seed, k, 2);
          for (std::uint64_t t = 0; t < AxiomReport::kPairBudget; ++t) {
            checker.axiom2(a, w, random_injection(m, rng), random_injection(n, rng), o.violations, false);
          }
          o.checks += AxiomReport::kPairBudget;
        }
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
          checker.row_split(a, w, mask, o.violations, false);
          ++o.checks;
        }
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
          checker.col_split(a, w, mask, o.violations, false);
          ++o.checks;
        }
        return o;
      },
      ex);

  auto absorb = [&](Outcome& o, std::uint64_t& counter) {
    counter += o.checks;
    report.violation_count += o.violations.size();
    for (auto& v : o.violations) {
      if (report.violations.size() < AxiomReport::kMaxStored) report.violations.push_back(std::move(v));
    }
  };
  report.exhaustive_arrays = nex;
  for (auto& o : exhaustive) absorb(o, report.exhaustive_checks);

  // Sampled checks run on the larger random shapes when the caps allow them,
  // otherwise on random arrays from the exhaustive range.
  if (sampled_checks > 0) {
    const std::size_t nbase = stream.sample_size() > 0 ? stream.sample_size() : nex;
    const std::size_t base_offset = stream.sample_size() > 0 ? nex : 0;
    const std::vector<Range> base =
        stream.sample_size() > 0
            ? map_indices(nbase, [&](std::size_t k) { return weigh(x, stream.at(base_offset + k)); }, ex)
            : cache;
    auto sampled = map_indices(
        static_cast<std::size_t>(sampled_checks),
        [&](std::size_t i) {
          Outcome o;
          auto rng = seeded(caps.seed, i, 3);
          const std::size_t b = stream.sample_size() > 0
                                    ? i % nbase
                                    : std::uniform_int_distribution<std::size_t>(0, nbase - 1)(rng);
          const Array a = stream.at(base_offset + b);
          const Range w = base[b];
          const int m = a.rows();
          const int n = a.cols();
          int kind = std::uniform_int_distribution<int>(0, 2)(rng);
          if (kind == 1 && m < 2) kind = n >= 2 ? 2 : 0;
          if (kind == 2 && n < 2) kind = m >= 2 ? 1 : 0;
          if (kind == 0) {
            checker.axiom2(a, w, random_injection(m, rng), random_injection(n, rng), o.violations, true);
          } else if (kind == 1) {
            const auto mask = std::uniform_int_distribution<std::uint64_t>(1, (std::uint64_t{1} << m) - 2)(rng);
            checker.row_split(a, w, mask, o.violations, true);
          } else {
            const auto mask = std::uniform_int_distribution<std::uint64_t>(1, (std::uint64_t{1} << n) - 2)(rng);
            checker.col_split(a, w, mask, o.violations, true);
          }
          o.checks = 1;
          return o;
        },
        ex);
    report.sampled_arrays = nbase;
    for (auto& o : sampled) absorb(o, report.sampled_checks);
  }
  return report;
}

}  // namespace mbanach
