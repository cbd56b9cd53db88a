#pragma once

#include <stdexcept>
#include <string>

namespace hedgefw {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch,
  kNonFinite,
  kDegenerateDesign,
  kParse,
  kIo,
  kNotConverged,
};

/// Exception carrying a stable error code; the C API maps it onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hedgefw
