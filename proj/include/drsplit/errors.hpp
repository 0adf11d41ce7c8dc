#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drsplit {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  LengthMismatch,
  NonMonotoneInput,
  SingularSystem,
  SingularMatrix,
  UnsupportedComposition,
  NonInvertibleBlock,
  ZeroCoupling,
  UnsupportedSampling,
  NonMonotone,
  NotLinear,
  NotSymmetricPD,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace drsplit
