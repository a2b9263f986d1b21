#include "autovmd/error.hpp"

namespace autovmd {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::EmptySignal: return "EmptySignal";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BadPadFraction: return "BadPadFraction";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnknownSignal: return "UnknownSignal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ZeroSource: return "ZeroSource";
    case ErrorCode::MissingTraces: return "MissingTraces";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what)
  , code_(code)
{
}

void raise(ErrorCode code, const std::string& what)
{
  throw Error(code, what);
}

} // namespace autovmd
