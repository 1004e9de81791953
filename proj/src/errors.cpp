#include "bcj/errors.hpp"

namespace bcj {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "invalid_argument";
    case ErrorCode::InvalidConfig:
      return "invalid_config";
    case ErrorCode::UnknownSession:
      return "unknown_session";
    case ErrorCode::UnknownItem:
      return "unknown_item";
    case ErrorCode::StalePair:
      return "stale_pair";
    case ErrorCode::MalformedJudgement:
      return "malformed_judgement";
    case ErrorCode::BudgetExhausted:
      return "budget_exhausted";
    case ErrorCode::LogMismatch:
      return "log_mismatch";
    case ErrorCode::DisconnectedGraph:
      return "disconnected_graph";
    case ErrorCode::Io:
      return "io_error";
    case ErrorCode::Unauthorized:
      return "unauthorized";
  }
  return "error";
}

}  // namespace bcj
