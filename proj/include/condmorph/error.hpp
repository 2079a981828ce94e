#pragma once

#include <stdexcept>
#include <string>

namespace condmorph {

enum class ErrorCode {
  kDimension,     // channel count or shape mismatch
  kDomain,        // value outside its admissible range
  kLookup,        // color or rank missing from a LUT / table
  kConfig,        // bad configuration or argument
  kFormat,        // malformed file or text input
  kNumeric,       // non-finite loss, NaN scores
  kSize,          // problem too large for an exact routine
  kInvalidOrder,  // relation matrix violates the total-order constraints
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace condmorph
