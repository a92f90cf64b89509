#pragma once

#include <cstdint>

#include <omp.h>

namespace bcover {

// Worker count for the data-parallel kernels. Results never depend on it:
// every kernel writes per-cell results by index and merges them in index order.
struct Exec {
  int workers = 0;  // 0 selects the OpenMP default

  int resolved() const { return workers > 0 ? workers : omp_get_max_threads(); }
};

template <class Body>
void parallel_for(std::int64_t n, const Exec& exec, Body&& body) {
  const int workers = exec.resolved();
#pragma omp parallel for schedule(dynamic, 256) num_threads(workers)
  for (std::int64_t i = 0; i < n; ++i) {
    body(i);
  }
}

// Counter-based uniform variates in [0,1): the value depends only on
// (seed, stream, counter), never on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ (stream * 0xd1b54a32d192ed03ULL)) + counter);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace bcover
