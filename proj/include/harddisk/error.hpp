#pragma once

#include <stdexcept>
#include <string>

namespace hd {

enum class ErrorKind {
  invalid_argument,
  degenerate_input,
  infeasible,
  not_superset,
  not_saturated,
  unbounded_cell,
  out_of_range,
  not_found,
  crossing_detected,
  not_upward_closed,
  io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace hd
