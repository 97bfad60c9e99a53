#pragma once

#include <stdexcept>
#include <string>

namespace joinery {

// Error taxonomy mirrors the CLI exit codes: invalid_input -> 2, everything
// checked-and-failed -> 1.
enum class ErrorKind {
  invalid_input,     // malformed data, mismatched systems, broken invariants
  bound_exceeded,    // period cap, LP bound, truncation memory bound
  property_failed,   // a checked property does not hold
  internal,          // should not happen (e.g. infeasible joining LP)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace joinery
