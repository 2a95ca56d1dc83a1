#pragma once

// Replicate kernels. Every Monte Carlo quantity here is a pure function of
// (seed, replicate index), so a kernel maps indices to per-replicate results
// and the caller folds them in index order. The serial map is the reference;
// the OpenMP map must return the identical vector.

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagperc {

enum class Execution { Serial, Parallel };

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_worker_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

template <typename T, typename F>
std::vector<T> map_replicates_serial(std::uint64_t first, std::size_t count, F&& f) {
  std::vector<T> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = f(first + i);
  return out;
}

template <typename T, typename F>
std::vector<T> map_replicates_parallel(std::uint64_t first, std::size_t count, F&& f) {
  std::vector<T> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(first + static_cast<std::uint64_t>(i));
  return out;
}

template <typename T, typename F>
std::vector<T> map_replicates(Execution ex, std::uint64_t first, std::size_t count, F&& f) {
  return ex == Execution::Serial ? map_replicates_serial<T>(first, count, f)
                                 : map_replicates_parallel<T>(first, count, f);
}

}  // namespace diagperc
