#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bcj/errors.hpp"
#include "bcj/store.hpp"

namespace httplib {
class Server;
}

namespace bcj {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// HTTP+JSON surface over a SessionStore, independent of the transport:
///
///   POST /sessions                          create, returns {"session_id", "budget"}
///   GET  /sessions/{id}/next-pair?judge=J   {"status": "pair"|"exhausted", ...}
///   POST /sessions/{id}/judgements          {"accepted", "sequence", "next"}
///   GET  /sessions/{id}/results[?judge=J]    J: only that judge's judgements
///   GET  /sessions/{id}/agreement[?judge=J]
///   GET  /sessions/{id}/audit
///   GET  /healthz
///
/// Errors are {"error": code, "message": text} with a 4xx status.
class Api {
 public:
  /// With a token, every route except /healthz requires
  /// "Authorization: Bearer <token>".
  explicit Api(SessionStore& store, std::optional<std::string> token = std::nullopt)
      : store_(store), token_(std::move(token)) {}

  ApiResponse handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query, std::string_view body,
                     std::string_view authorization = {}) const;

 private:
  ApiResponse route(std::string_view method, std::string_view path,
                    const std::map<std::string, std::string>& query, std::string_view body) const;

  SessionStore& store_;
  std::optional<std::string> token_;
};

/// Routes every request on `server` through `api`.
void mount(httplib::Server& server, const Api& api);

int http_status(ErrorCode code);

}  // namespace bcj
