#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ysys::par {

/// Execution policy for the sweep kernels. Every parallel kernel has a
/// serial twin selected at runtime, so tests can compare the two paths
/// and the benchmark tool can time them against each other.
enum class Exec { serial, openmp };

inline Exec default_exec() {
#ifdef _OPENMP
  return Exec::openmp;
#else
  return Exec::serial;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, n). The OpenMP path requires body to write
/// only to per-index slots.
template <class Body>
void for_range(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) body(i);
}

/// Like for_range but with dynamic scheduling, for uneven per-item work.
template <class Body>
void for_range_dynamic(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace ysys::par
