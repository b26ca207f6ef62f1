#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace congruent {

enum class ErrorKind {
  kInvalidInput,
  kDomain,
  kDegeneracy,
  kUnsupportedDimension,
  kInvalidMap,
  kCalibrationFailure,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the harness,
/// the CLI) can map it to a report entry or an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace congruent
