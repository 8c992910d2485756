#ifndef READOP_KERNELS_HPP
#define READOP_KERNELS_HPP

#include <exception>
#include <vector>

#include <omp.h>

namespace readop {

namespace detail {

/// Runs body(j) for j in [0, n) across OpenMP threads. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for_columns(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long j = 0; j < count; ++j) {
    try {
      body(static_cast<std::size_t>(j));
    } catch (...) {
#pragma omp critical(readop_column_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

template <typename ColumnFn>
Window build_columns(std::size_t n, Basis basis, ColumnFn&& fn) {
  std::vector<SparseVector> cols(n);
  detail::parallel_for_columns(n, [&](std::size_t j) { cols[j] = fn(j); });
  Window w(n, basis);
  for (std::size_t j = 0; j < n; ++j) w.set_column(j, cols[j]);
  return w;
}

}  // namespace readop

#endif  // READOP_KERNELS_HPP
