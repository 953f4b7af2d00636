#pragma once

#include <stdexcept>
#include <string>

namespace odolin {

enum class ErrorCode {
  OutOfRange,
  WindowMismatch,
  WindowTooSmall,
  InvalidFamily,
  InvalidShift,
  SizeLimit,
  KTooSmall,
  HorizonExhausted,
  NotFound,
  EpsilonTooLarge,
  InconsistentDeclarations,
  NotContinuous,
  Config,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace odolin
