#include "fairdiv/error.hpp"

namespace fairdiv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::underflow: return "underflow";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::precondition_failed: return "precondition_failed";
    case ErrorCode::unsupported_instance: return "unsupported_instance";
    case ErrorCode::invariant_violated: return "invariant_violated";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::schema_error: return "schema_error";
  }
  return "unknown";
}

}  // namespace fairdiv
