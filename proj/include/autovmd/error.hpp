#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace autovmd {

enum class ErrorCode
{
  EmptySignal,
  NonFinite,
  BadPadFraction,
  LengthMismatch,
  UnknownSignal,
  ParseError,
  EmptyFile,
  IoError,
  GridTooSmall,
  OrderOutOfRange,
  NonPositiveAlpha,
  SingularSystem,
  BadConfig,
  EmptyInput,
  NonPositiveBandwidth,
  IndexOutOfRange,
  ShapeMismatch,
  DegenerateInput,
  ZeroSource,
  MissingTraces,
};

std::string_view to_string(ErrorCode code);

//! Exception carrying a machine-checkable error code.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const std::string& what)
{
  if (!cond)
    raise(code, what);
}

} // namespace autovmd
