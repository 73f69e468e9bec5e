#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbanach/arrays.hpp"
#include "mbanach/kernels.hpp"
#include "mbanach/weights.hpp"

namespace mbanach {

// Axiom numbering: 1 values finite and nonnegative, 2 subarray monotonicity,
// 3 row-split subadditivity, 4 column-split subadditivity.
struct AxiomViolation {
  int axiom = 0;
  Array array;
  // Axiom 2: row and column images of the injections.  Axioms 3/4: the
  // indices of the first part of the split (rows or columns).
  std::vector<int> rows;
  std::vector<int> cols;
  double lhs = 0.0;
  double rhs = 0.0;
  bool sampled = false;
};

struct AxiomReport {
  std::string rule;
  EnumCaps caps;
  std::uint64_t exhaustive_arrays = 0;
  std::uint64_t exhaustive_checks = 0;
  std::uint64_t sampled_arrays = 0;
  std::uint64_t sampled_checks = 0;
  std::uint64_t violation_count = 0;
  // Canonical order: exhaustive arrays in stream order, then sampled checks
  // in draw order.  Only the first kMaxStored are kept.
  std::vector<AxiomViolation> violations;

  static constexpr std::size_t kMaxStored = 100;
  static constexpr std::uint64_t kPairBudget = 4096;

  bool passed() const noexcept { return violation_count == 0; }
};

// Relative slack used when comparing the two sides of an axiom.
constexpr double kAxiomTolerance = 1e-9;

AxiomReport check_axioms(const AWSet& x, const EnumCaps& caps = {}, std::uint64_t sampled_checks = 100000,
                         Execution ex = Execution::parallel);

}  // namespace mbanach
