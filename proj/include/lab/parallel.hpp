#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lab::par {

enum class Mode { serial, openmp };

// Fixed block size so the reduction tree is independent of thread count.
inline constexpr std::size_t kBlock = 4096;

// Sum of body(i) for i in [0, n). Partial sums are accumulated per block in
// index order and folded in block order, so the result is bit-identical
// between serial and OpenMP execution and across thread counts.
template <class Body>
double reduce_sum(std::size_t n, Body&& body, Mode mode = Mode::openmp) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
#ifdef _OPENMP
  if (mode == Mode::openmp) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += body(i);
      partial[static_cast<std::size_t>(b)] = acc;
    }
  } else
#endif
  {
    (void)mode;
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t lo = b * kBlock;
      const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += body(i);
      partial[b] = acc;
    }
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

// Max of body(i); same blocked scheme (max is order-insensitive, the blocks
// are kept anyway so serial and parallel paths share one code shape).
template <class Body>
double reduce_max(std::size_t n, Body&& body, Mode mode = Mode::openmp) {
  if (n == 0) return -1.0 / 0.0;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, -1.0 / 0.0);
#ifdef _OPENMP
  if (mode == Mode::openmp) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
      double acc = -1.0 / 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        double v = body(i);
        if (v > acc) acc = v;
      }
      partial[static_cast<std::size_t>(b)] = acc;
    }
  } else
#endif
  {
    (void)mode;
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t lo = b * kBlock;
      const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
      double acc = -1.0 / 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        double v = body(i);
        if (v > acc) acc = v;
      }
      partial[b] = acc;
    }
  }
  double best = -1.0 / 0.0;
  for (double v : partial) {
    if (v > best) best = v;
  }
  return best;
}

// Runs body(i) for i in [0, n), each iteration writing only to its own slot.
template <class Body>
void for_each_index(std::size_t n, Body&& body, Mode mode = Mode::openmp) {
#ifdef _OPENMP
  if (mode == Mode::openmp) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_thread_cap(int cap) {
#ifdef _OPENMP
  if (cap > 0) omp_set_num_threads(cap);
#else
  (void)cap;
#endif
}

}  // namespace lab::par
