#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbanach/arrays.hpp"
#include "mbanach/kernels.hpp"
#include "mbanach/weights.hpp"

namespace mbanach {

// Scalar matrix-norm targets for maps X → ℂ.
enum class ScalarTarget { min, amax };

struct CbndReport {
  // Largest image/source weight ratio seen (0/0 counts as 0).
  double lower_bound = 0.0;
  std::optional<Array> witness;
  // An array of source weight 0 whose image has positive weight; its
  // presence certifies that the map is not completely bounded.
  std::optional<Array> zero_weight_violation;
  EnumCaps caps;
  bool exact = false;
  std::string exact_reason;
  std::uint64_t arrays_inspected = 0;
};

// Alternating-block arrays A_0..A_d over the points of `x` with scalar
// payloads +1 and −1, for d = min(caps.hadamard_depth, 16).  Empty when the
// depth is off or the points are missing.
std::vector<Array> hadamard_extras(const AWSet& x, const EnumCaps& caps);

// Indices of the points with scalar payload exactly +1 and −1.
std::optional<std::pair<int, int>> plus_minus_points(const AWSet& x);

// Per-array ratios image/source over the stream; +inf marks a zero-weight
// violation.
std::vector<double> cbnd_ratios(const ScalarMap& phi, const AWSet& x, ScalarTarget target,
                                const ArrayEnumeration& stream, Execution ex = Execution::parallel);
std::vector<double> cbnd_ratios(const SetMap& phi, const AWSet& x, const AWSet& y,
                                const ArrayEnumeration& stream, Execution ex = Execution::parallel);

CbndReport cbnd_estimate(const ScalarMap& phi, const AWSet& x, ScalarTarget target, const EnumCaps& caps = {},
                         Execution ex = Execution::parallel);
CbndReport cbnd_estimate(const SetMap& phi, const AWSet& x, const AWSet& y, const EnumCaps& caps = {},
                         Execution ex = Execution::parallel);

struct CertificateStep {
  int m = 0;
  double bound = 0.0;
};

struct BrnReport {
  double upper_bound = 0.0;
  std::optional<Array> witness;
  std::string witness_note;
  std::vector<CertificateStep> certificate;
  std::optional<double> exact_value;
  std::string justification;
  EnumCaps caps;
  std::uint64_t arrays_inspected = 0;
};

constexpr int kDefaultHadamardDepth = 12;

// Weight of A_m over the ±1 points of an alphabet inheriting MIN(ℂ),
// via the factored form; valid for any depth up to kMaxFactoredHadamard.
double hadamard_weight(const AWSet& x, int m);

BrnReport brn_estimate(const AWSet& x, const EnumCaps& caps = {}, bool use_hadamard = true,
                       Execution ex = Execution::parallel);

enum class Freeness { free_certified, not_free_certified, unresolved };

std::string to_string(Freeness f);

struct ArrayFreeReport {
  Freeness classification = Freeness::unresolved;
  std::string route;
  // Generated sequence (size parameter, ratio) when a growth route applies.
  std::vector<CertificateStep> growth;
  // Lower bound on the complete bound of the characteristic function.
  double cbnd_lower_bound = 0.0;
  std::optional<double> brn_exact;
  EnumCaps caps;
};

ArrayFreeReport array_free_report(const AWSet& x, int point, const EnumCaps& caps = {},
                                  Execution ex = Execution::parallel);

}  // namespace mbanach
