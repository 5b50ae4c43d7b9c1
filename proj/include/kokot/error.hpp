#pragma once

#include <stdexcept>
#include <string>

namespace kok {

enum class ErrorKind {
  precondition,
  no_solution,
  inconsistent,
  classification,
  degenerate,
  pole,
  no_realization,
  cell_inconsistency,
  out_of_interval,
  trace,
  assembly,
  parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::no_solution: return "no-solution";
    case ErrorKind::inconsistent: return "inconsistent";
    case ErrorKind::classification: return "classification";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::pole: return "evaluation-at-pole";
    case ErrorKind::no_realization: return "no-realization";
    case ErrorKind::cell_inconsistency: return "cell-formula-inconsistency";
    case ErrorKind::out_of_interval: return "out-of-interval";
    case ErrorKind::trace: return "trace";
    case ErrorKind::assembly: return "assembly";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kok
