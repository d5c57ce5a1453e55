#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsqf {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  SingularOperator,
  DimensionMismatch,
  NotPositive,
  TraceNotOne,
  NotFullRank,
  NotApplicable,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the experiment driver in particular) can decide whether to skip a
/// sample or abort.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bsqf
