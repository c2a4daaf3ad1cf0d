#pragma once

#include <stdexcept>
#include <string>

namespace gkdvbh {

/// Failure categories. The numeric values of the first four match the
/// process exit codes documented for the CLI.
enum class ErrorCode : int {
  ok = 0,
  verification_failed = 1,
  config = 2,
  solver_divergence = 3,
  invalid_argument = 4,
  dimension_mismatch = 5,
  constraint_violation = 6,
  singular_system = 7,
  hypothesis_not_met = 8,
  io = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gkdvbh
