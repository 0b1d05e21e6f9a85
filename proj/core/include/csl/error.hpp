#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csl {

enum class ErrorCode {
  ZeroNorm,
  NotNormalized,
  DimensionMismatch,
  NonHermitianHamiltonian,
  InvalidDensityMatrix,
  InvalidParameter,
  IndexOutOfRange,
  NonPositiveInput,
  EmptyRecord,
  InvalidGame,
  InvalidData,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures are reported through this exception; `code()` lets
/// callers branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace csl
