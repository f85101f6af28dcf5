#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace embedrank {

/// Thread count for an OpenMP region; non-positive means the runtime default.
inline int resolve_workers(int workers) noexcept {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

}  // namespace embedrank
