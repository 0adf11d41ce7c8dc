#include "drsplit/errors.hpp"

namespace drsplit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonMonotoneInput: return "NonMonotoneInput";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::UnsupportedComposition: return "UnsupportedComposition";
    case ErrorCode::NonInvertibleBlock: return "NonInvertibleBlock";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::UnsupportedSampling: return "UnsupportedSampling";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::NotSymmetricPD: return "NotSymmetricPD";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace drsplit
