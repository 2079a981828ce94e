#include "condmorph/error.hpp"

namespace condmorph {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimension: return "dimension error";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kLookup: return "lookup error";
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kNumeric: return "numeric error";
    case ErrorCode::kSize: return "size error";
    case ErrorCode::kInvalidOrder: return "invalid order";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace condmorph
