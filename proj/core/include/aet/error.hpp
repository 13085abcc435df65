#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aet {

// One code per failure class. The CLI maps each code to its own exit status.
enum class ErrorCode {
  BadModulus = 1,
  WrongSupport,
  NonMultiplicative,
  InvalidProduct,
  NotPrime,
  CutoffTooSmall,
  ModeUnavailable,
  PrincipalCharacter,
  PrecisionUnreachable,
  OutOfMemory,
  XBeyondTable,
  SOutOfRange,
  MBeyondTable,
  MSmallerThanX,
  NonPositiveX,
  XBelowN,
  XBelowOne,
  NotIntegrableNearZero,
  XBeyondGrid,
  AnchorOutOfRange,
  NotHomogeneous,
  BadGrid,
  UsageError,
  IoError,
  CacheMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace aet
