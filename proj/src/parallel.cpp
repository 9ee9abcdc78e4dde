#include "gflbs/parallel.hpp"

#include <thread>

namespace gflbs {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
#endif
}

}  // namespace gflbs
