#include "harddisk/error.hpp"

#include "harddisk/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::degenerate_input: return "degenerate input";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::not_superset: return "not a superset";
    case ErrorKind::not_saturated: return "not saturated";
    case ErrorKind::unbounded_cell: return "unbounded cell";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::not_found: return "not found";
    case ErrorKind::crossing_detected: return "crossing detected";
    case ErrorKind::not_upward_closed: return "family not upward-closed";
    case ErrorKind::io: return "i/o";
  }
  return "error";
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hd
