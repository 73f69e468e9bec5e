#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <type_traits>
#include <vector>

#include "mbanach/arrays.hpp"

namespace mbanach {

class AWSet;

// Every scan has a serial reference and an OpenMP variant.  Both write each
// result to its own slot and reduce serially afterwards, so the output does
// not depend on the thread count or schedule.
enum class Execution { serial, parallel };

void set_thread_count(int threads);
int thread_count();

namespace detail {

template <typename F>
using MapResult = std::decay_t<std::invoke_result_t<F&, std::size_t>>;

}  // namespace detail

template <typename F>
std::vector<detail::MapResult<F>> map_indices(std::size_t n, F&& f, Execution ex) {
  std::vector<detail::MapResult<F>> out(n);
  if (ex == Execution::serial || n < 2) {
    for (std::size_t k = 0; k < n; ++k) out[k] = f(k);
    return out;
  }
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = f(static_cast<std::size_t>(k));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      // Keep the error a serial run would have hit first.
      if (static_cast<std::size_t>(k) < error_index) {
        error_index = static_cast<std::size_t>(k);
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<double> weigh_all_serial(const AWSet& x, const ArrayEnumeration& stream);
std::vector<double> weigh_all_omp(const AWSet& x, const ArrayEnumeration& stream);
std::vector<double> weigh_all(const AWSet& x, const ArrayEnumeration& stream, Execution ex);

struct Extremum {
  double value = 0.0;
  std::size_t index = 0;
  bool found = false;
};

// Largest (smallest) value and the first index whose value lies within a
// relative 1e-12 of it.  NaN entries are skipped.
Extremum max_first_serial(std::span<const double> values);
Extremum max_first_omp(std::span<const double> values);
Extremum min_first_serial(std::span<const double> values);
Extremum min_first_omp(std::span<const double> values);
Extremum max_first(std::span<const double> values, Execution ex);
Extremum min_first(std::span<const double> values, Execution ex);

}  // namespace mbanach
