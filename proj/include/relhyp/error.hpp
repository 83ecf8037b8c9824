#pragma once

#include <stdexcept>
#include <string>

namespace relhyp {

enum class ErrorKind {
  invalid_order,
  invalid_element,
  shape,
  parent_mismatch,
  invalid_word,
  basepoint_mismatch,
  invalid_argument,
  cap_exceeded,
  insufficient_radius,
  unsupported,
  missing_alpha,
  non_simplicial,
  predicate_failure,
  schema,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so the CLI can map it
// onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace relhyp
