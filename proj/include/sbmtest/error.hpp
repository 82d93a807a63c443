#pragma once

#include <stdexcept>
#include <string>

namespace sbmtest {

enum class ErrorCode {
  InvalidArgument,
  LengthMismatch,
  OutOfRange,
  UndefinedSnr,
  NoSignal,
  NotPositiveDefinite,
  Degenerate,
  Io,
  Parse,
  UnknownNode,
  Config,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sbmtest
