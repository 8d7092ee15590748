#include "heat/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heat {

int worker_count() {
  int fallback = 1;
#ifdef _OPENMP
  fallback = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("HEAT_SERIES_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n < fallback ? n : fallback;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

}  // namespace heat
