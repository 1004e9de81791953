#pragma once

#include <stdexcept>
#include <string>

namespace bcj {

enum class ErrorCode {
  InvalidArgument,
  InvalidConfig,
  UnknownSession,
  UnknownItem,
  StalePair,
  MalformedJudgement,
  BudgetExhausted,
  LogMismatch,
  DisconnectedGraph,
  Io,
  Unauthorized,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a stable, machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bcj
