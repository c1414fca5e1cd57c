#include "gmtlab/errors.hpp"

namespace gmt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::VerticalLine: return "VerticalLine";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::ScaleRangeTooNarrow: return "ScaleRangeTooNarrow";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::AllMassAtCenter: return "AllMassAtCenter";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::AllCollinear: return "AllCollinear";
    case ErrorKind::SeparationViolated: return "SeparationViolated";
    case ErrorKind::CollinearX: return "CollinearX";
    case ErrorKind::LowDimY: return "LowDimY";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gmt
