#include "mbanach/cbmaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mbanach/errors.hpp"

namespace mbanach {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool inherits_min_scalar(const AWSet& x) {
  const auto* inh = dynamic_cast<const InheritedRule*>(&x.rule());
  return inh != nullptr && inh->norm().name() == "min-scalar";
}

bool inherits_amax_scalar(const AWSet& x) {
  const auto* inh = dynamic_cast<const InheritedRule*>(&x.rule());
  return inh != nullptr && inh->norm().name() == "amax-scalar";
}

double ratio(double image, double source) {
  if (source > 0.0) return image / source;
  return image > 0.0 ? kInf : 0.0;
}

void require_exact(const AWSet& x, const char* what) {
  if (!x.exact()) {
    throw UnsupportedError(std::string(what) + " needs exact weights; rule '" + x.rule().kind() +
                           "' only yields bounds");
  }
}

CbndReport summarize(const std::vector<double>& ratios, const ArrayEnumeration& stream, const EnumCaps& caps,
                     Execution ex) {
  CbndReport r;
  r.caps = caps;
  r.arrays_inspected = ratios.size();
  std::vector<double> finite(ratios);
  for (std::size_t k = 0; k < finite.size(); ++k) {
    if (std::isinf(finite[k])) {
      if (!r.zero_weight_violation) r.zero_weight_violation = stream.at(k);
      finite[k] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  const Extremum top = max_first(finite, ex);
  if (top.found) {
    r.lower_bound = top.value;
    r.witness = stream.at(top.index);
  }
  return r;
}

}  // namespace

std::optional<std::pair<int, int>> plus_minus_points(const AWSet& x) {
  std::optional<int> plus;
  std::optional<int> minus;
  for (int i = 0; i < x.size(); ++i) {
    const Point& p = x.point(i);
    if (p.theta || p.payload.size() != 1) continue;
    if (p.payload[0] == Complex(1.0) && !plus) plus = i;
    if (p.payload[0] == Complex(-1.0) && !minus) minus = i;
  }
  if (plus && minus) return std::pair{*plus, *minus};
  return std::nullopt;
}

std::vector<Array> hadamard_extras(const AWSet& x, const EnumCaps& caps) {
  std::vector<Array> out;
  if (caps.hadamard_depth < 0) return out;
  const auto pm = plus_minus_points(x);
  if (!pm) return out;
  const int depth = std::min(caps.hadamard_depth, kMaxMaterializedHadamard);
  for (int m = 0; m <= depth; ++m) out.push_back(hadamard_sequence(m, pm->first, pm->second));
  return out;
}

std::vector<double> cbnd_ratios(const ScalarMap& phi, const AWSet& x, ScalarTarget target,
                                const ArrayEnumeration& stream, Execution ex) {
  require_exact(x, "cbnd");
  if (static_cast<int>(phi.values.size()) != x.size()) throw InputError("map must assign a value to every point");
  return map_indices(
      stream.size(),
      [&](std::size_t k) {
        const Array a = stream.at(k);
        const ScalarMatrix img = ampliate(phi, a);
        const double iw = target == ScalarTarget::min ? operator_norm(img) : trace_norm(img);
        return ratio(iw, x.exact_weight(a));
      },
      ex);
}

std::vector<double> cbnd_ratios(const SetMap& phi, const AWSet& x, const AWSet& y,
                                const ArrayEnumeration& stream, Execution ex) {
  require_exact(x, "cbnd");
  require_exact(y, "cbnd");
  if (static_cast<int>(phi.images.size()) != x.size() || phi.target_size != y.size()) {
    throw InputError("map does not match its source and target alphabets");
  }
  return map_indices(
      stream.size(),
      [&](std::size_t k) {
        const Array a = stream.at(k);
        return ratio(y.exact_weight(ampliate(phi, a)), x.exact_weight(a));
      },
      ex);
}

CbndReport cbnd_estimate(const ScalarMap& phi, const AWSet& x, ScalarTarget target, const EnumCaps& caps,
                         Execution ex) {
  validate(caps);
  const ArrayEnumeration stream(x.size(), caps, hadamard_extras(x, caps));
  CbndReport r = summarize(cbnd_ratios(phi, x, target, stream, ex), stream, caps, ex);
  if (dynamic_cast<const MaRule*>(&x.rule()) != nullptr) {
    // Maps out of MA are completely bounded exactly when they are bounded,
    // with the same constant, and the 1×1 arrays are in every stream.
    r.exact = true;
    r.exact_reason = r.zero_weight_violation ? "source is MA: a zero-weight point has a nonzero image"
                                             : "source is MA: complete bound equals the pointwise bound";
  }
  return r;
}

CbndReport cbnd_estimate(const SetMap& phi, const AWSet& x, const AWSet& y, const EnumCaps& caps, Execution ex) {
  validate(caps);
  const ArrayEnumeration stream(x.size(), caps, hadamard_extras(x, caps));
  CbndReport r = summarize(cbnd_ratios(phi, x, y, stream, ex), stream, caps, ex);
  if (&x == &y && phi.images == SetMap::identity(x.size()).images && r.lower_bound > 0.0) {
    r.exact = true;
    r.exact_reason = "identity map";
  }
  return r;
}

double hadamard_weight(const AWSet& x, int m) {
  if (!inherits_min_scalar(x)) throw UnsupportedError("factored weight needs a rule inheriting MIN(C)");
  const auto pm = plus_minus_points(x);
  if (!pm) throw InputError("alphabet lacks points with payloads +1 and -1");
  const HadamardFactors f = hadamard_compressed_factors(m);
  const Complex p = x.point(pm->first).payload[0];
  const Complex q = x.point(pm->second).payload[0];
  return std::pow(2.0, 0.5 * m) * operator_norm(f.plus * p + f.minus * q);
}

BrnReport brn_estimate(const AWSet& x, const EnumCaps& caps, bool use_hadamard, Execution ex) {
  validate(caps);
  require_exact(x, "brn");
  const ArrayEnumeration stream(x.size(), caps, use_hadamard ? hadamard_extras(x, caps) : std::vector<Array>{});
  const auto ratios = map_indices(
      stream.size(),
      [&](std::size_t k) {
        const Array a = stream.at(k);
        return x.exact_weight(a) / std::sqrt(static_cast<double>(a.size()));
      },
      ex);

  BrnReport r;
  r.caps = caps;
  r.arrays_inspected = ratios.size();
  const Extremum low = min_first(ratios, ex);
  if (low.found) {
    r.upper_bound = low.value;
    r.witness = stream.at(low.index);
    r.witness_note = "enumerated array";
  }

  if (use_hadamard && inherits_min_scalar(x) && plus_minus_points(x)) {
    const int depth = caps.hadamard_depth >= 0 ? caps.hadamard_depth : kDefaultHadamardDepth;
    for (int m = 0; m <= depth; ++m) {
      const double cells = std::pow(2.0, m) * (m + 1);
      r.certificate.push_back({m, hadamard_weight(x, m) / std::sqrt(cells)});
    }
    const auto best = std::min_element(r.certificate.begin(), r.certificate.end(),
                                       [](auto a, auto b) { return a.bound < b.bound; });
    if (best->bound < r.upper_bound) {
      r.upper_bound = best->bound;
      // Named rather than stored: A_m has 2^m columns.
      r.witness.reset();
      r.witness_note = "alternating-block array A_" + std::to_string(best->m);
    }
  }

  if (const auto* ma = dynamic_cast<const MaRule*>(&x.rule())) {
    r.exact_value = *std::min_element(ma->weights().begin(), ma->weights().end());
    r.justification = "MA: the weight of an m×n array is at least mn times the least point weight";
  } else if (dynamic_cast<const MinArrayRule*>(&x.rule()) != nullptr) {
    r.exact_value = 0.0;
    r.justification = "mA: constant n×n arrays have ratio w/n";
  } else if ((inherits_min_scalar(x) || inherits_amax_scalar(x)) && x.size() == 1) {
    r.exact_value = std::abs(x.point(0).payload[0]);
    r.justification = "single point: every array is c·J, whose norm is |c|·sqrt(mn)";
  }
  return r;
}

std::string to_string(Freeness f) {
  switch (f) {
    case Freeness::free_certified:
      return "FREE_CERTIFIED";
    case Freeness::not_free_certified:
      return "NOT_FREE_CERTIFIED";
    case Freeness::unresolved:
      return "UNRESOLVED";
  }
  return "UNRESOLVED";
}

ArrayFreeReport array_free_report(const AWSet& x, int point, const EnumCaps& caps, Execution ex) {
  validate(caps);
  require_exact(x, "array-free classification");
  if (point < 0 || point >= x.size()) throw InputError("point index outside the alphabet");

  ArrayFreeReport r;
  r.caps = caps;
  ScalarMap chi;
  chi.values.assign(static_cast<std::size_t>(x.size()), 0.0);
  chi.values[static_cast<std::size_t>(point)] = 1.0;
  const CbndReport cb = cbnd_estimate(chi, x, ScalarTarget::min, caps, ex);
  r.cbnd_lower_bound = cb.lower_bound;

  const BrnReport brn = brn_estimate(x, caps, false, ex);
  r.brn_exact = brn.exact_value;

  if (cb.zero_weight_violation) {
    r.classification = Freeness::not_free_certified;
    r.route = "zero-weight array with nonzero image: " + x.format_array(*cb.zero_weight_violation);
    return r;
  }
  if (brn.exact_value && *brn.exact_value > 0.0) {
    r.classification = Freeness::free_certified;
    r.route = "finite alphabet with positive bounded range number";
    return r;
  }
  if (const auto* ma = dynamic_cast<const MaRule*>(&x.rule())) {
    if (ma->weights()[static_cast<std::size_t>(point)] > 0.0) {
      r.classification = Freeness::free_certified;
      r.route = "MA source: complete bound equals the pointwise bound 1/w";
      return r;
    }
  }
  if (const auto* ma = dynamic_cast<const MinArrayRule*>(&x.rule())) {
    const double w = ma->weights()[static_cast<std::size_t>(point)];
    // The n×n constant array of the point has weight w and image J_n of
    // norm n.
    for (int n = 1; n <= 1024; n *= 2) r.growth.push_back({n, n / w});
    r.classification = Freeness::not_free_certified;
    r.route = "constant arrays: ratio n/w grows without bound";
    return r;
  }
  if (inherits_min_scalar(x)) {
    const auto pm = plus_minus_points(x);
    bool pm_only = pm.has_value();
    for (int i = 0; i < x.size() && pm_only; ++i) {
      pm_only = i == pm->first || i == pm->second;
    }
    if (pm_only && (point == pm->first || point == pm->second)) {
      // χ_x(A_m) = P_±·A_m and w(A_m) = 2^{m/2}, so the ratio is ‖P_±‖,
      // which is at least sqrt(m)/2.
      const int depth = caps.hadamard_depth >= 0 ? caps.hadamard_depth : kDefaultHadamardDepth;
      for (int m = 0; m <= depth; ++m) {
        const HadamardFactors f = hadamard_compressed_factors(m);
        const ScalarMatrix& sel = point == pm->first ? f.plus : f.minus;
        r.growth.push_back({m, operator_norm(sel) * std::pow(2.0, 0.5 * m) / hadamard_weight(x, m)});
      }
      r.classification = Freeness::not_free_certified;
      r.route = "alternating-block arrays A_m: ratio grows at least like sqrt(m)/2";
      return r;
    }
  }
  r.classification = Freeness::unresolved;
  r.route = "no certificate; complete bound of the characteristic function is at least the lower bound";
  return r;
}

}  // namespace mbanach
