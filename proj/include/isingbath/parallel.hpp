#pragma once

#ifdef ISINGBATH_OMP
#include <omp.h>
#define ISINGBATH_OMP_PRAGMA(content) _Pragma(content)
#else
#define ISINGBATH_OMP_PRAGMA(content)
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif

namespace isingbath {

inline int max_threads() { return omp_get_max_threads(); }

inline void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace isingbath
