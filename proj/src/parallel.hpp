#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mitensor::detail {

// threads == 0 means "use the OpenMP default"; anything else is taken as-is.
inline int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

} // namespace mitensor::detail
