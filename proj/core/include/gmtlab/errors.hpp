#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmt {

enum class ErrorKind {
  PreconditionViolated,
  VerticalLine,
  DegeneratePair,
  TooManyPoints,
  ScaleRangeTooNarrow,
  EmptyInput,
  AllMassAtCenter,
  TooFewPoints,
  AllCollinear,
  SeparationViolated,
  CollinearX,
  LowDimY,
  ConfigInvalid,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every library failure is reported through this type. The kind decides the CLI exit status:
/// InvariantViolation maps to 3, everything else is a caller-side precondition and maps to 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

}  // namespace gmt
