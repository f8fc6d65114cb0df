#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairdiv {

enum class ErrorCode {
  dimension_mismatch,
  index_out_of_range,
  underflow,
  invalid_argument,
  precondition_failed,
  unsupported_instance,
  invariant_violated,
  cap_exceeded,
  overflow,
  parse_error,
  schema_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every error raised by the library carries a machine-readable code so the
// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fairdiv
