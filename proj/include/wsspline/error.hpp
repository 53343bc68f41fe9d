#pragma once

#include <stdexcept>
#include <string>

namespace wsspline {

enum class ErrorKind {
  invalid_argument,
  degenerate,
  out_of_domain,
  on_knot_line,
  nonconforming,
  not_shared,
  propagation_conflict,
  numerical_singularity,
  dimension_mismatch,
  hash_mismatch,
  parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace wsspline
