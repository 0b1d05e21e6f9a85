#include "csl/error.hpp"

namespace csl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonHermitianHamiltonian: return "NonHermitianHamiltonian";
    case ErrorCode::InvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::InvalidGame: return "InvalidGame";
    case ErrorCode::InvalidData: return "InvalidData";
  }
  return "Unknown";
}

}  // namespace csl
