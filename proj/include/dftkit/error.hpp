#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dftkit {

enum class ErrorCode {
  kInvalidOrder,
  kResourceLimit,
  kEmptyInput,
  kLength,
  kDomain,
  kNumerical,
  kProfileValidation,
  kUnknownPreset,
  kIo,
  kFormat,
  kRange,
  kShape,
  kAliasing,
  kRate,
  kUsage,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dftkit
