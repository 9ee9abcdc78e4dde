#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gflbs {

/// Number of workers actually used for `requested` (0 or negative = all
/// available cores).
int resolve_workers(int requested);

/// Runs body(i) for i in [0, n). workers == 1 is the serial reference path;
/// otherwise iterations are distributed over OpenMP threads. Bodies must
/// write to disjoint state, so results are identical for any worker count.
template <typename Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
#ifdef _OPENMP
    const int w = resolve_workers(workers);
    if (w > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(w)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)workers;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

}  // namespace gflbs
