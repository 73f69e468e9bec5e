#include "mbanach/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "mbanach/errors.hpp"
#include "mbanach/weights.hpp"

namespace mbanach {
namespace {

constexpr double kTieTolerance = 1e-12;

double tie_slack(double v) { return kTieTolerance * std::max(1.0, std::abs(v)); }

}  // namespace

void set_thread_count(int threads) {
  if (threads <= 0) throw InputError("thread count must be positive");
  omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

std::vector<double> weigh_all_serial(const AWSet& x, const ArrayEnumeration& stream) {
  std::vector<double> out(stream.size());
  for (std::size_t k = 0; k < stream.size(); ++k) out[k] = x.exact_weight(stream.at(k));
  return out;
}

std::vector<double> weigh_all_omp(const AWSet& x, const ArrayEnumeration& stream) {
  return map_indices(stream.size(), [&](std::size_t k) { return x.exact_weight(stream.at(k)); },
                     Execution::parallel);
}

std::vector<double> weigh_all(const AWSet& x, const ArrayEnumeration& stream, Execution ex) {
  return ex == Execution::serial ? weigh_all_serial(x, stream) : weigh_all_omp(x, stream);
}

Extremum max_first_serial(std::span<const double> values) {
  Extremum e;
  double top = -std::numeric_limits<double>::infinity();
  for (double v : values)
    if (!std::isnan(v)) top = std::max(top, v);
  if (top == -std::numeric_limits<double>::infinity() && values.empty()) return e;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isnan(values[k]) && values[k] >= top - tie_slack(top)) {
      return {top, k, true};
    }
  }
  return e;
}

Extremum max_first_omp(std::span<const double> values) {
  const auto n = static_cast<long long>(values.size());
  double top = -std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(max : top)
  for (long long k = 0; k < n; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    if (!std::isnan(v) && v > top) top = v;
  }
  if (values.empty()) return {};
  const double cut = top - tie_slack(top);
  long long first = n;
#pragma omp parallel for reduction(min : first)
  for (long long k = 0; k < n; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    if (!std::isnan(v) && v >= cut && k < first) first = k;
  }
  if (first == n) return {};
  return {top, static_cast<std::size_t>(first), true};
}

Extremum min_first_serial(std::span<const double> values) {
  double bottom = std::numeric_limits<double>::infinity();
  for (double v : values)
    if (!std::isnan(v)) bottom = std::min(bottom, v);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isnan(values[k]) && values[k] <= bottom + tie_slack(bottom)) {
      return {bottom, k, true};
    }
  }
  return {};
}

Extremum min_first_omp(std::span<const double> values) {
  const auto n = static_cast<long long>(values.size());
  double bottom = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : bottom)
  for (long long k = 0; k < n; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    if (!std::isnan(v) && v < bottom) bottom = v;
  }
  const double cut = bottom + tie_slack(bottom);
  long long first = n;
#pragma omp parallel for reduction(min : first)
  for (long long k = 0; k < n; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    if (!std::isnan(v) && v <= cut && k < first) first = k;
  }
  if (first == n) return {};
  return {bottom, static_cast<std::size_t>(first), true};
}

Extremum max_first(std::span<const double> values, Execution ex) {
  return ex == Execution::serial ? max_first_serial(values) : max_first_omp(values);
}

Extremum min_first(std::span<const double> values, Execution ex) {
  return ex == Execution::serial ? min_first_serial(values) : min_first_omp(values);
}

}  // namespace mbanach
