#include "memctrl/runtime.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace memctrl::runtime {

int active_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("MEMCTRL_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
#endif
  return active_threads();
}

}  // namespace memctrl::runtime
