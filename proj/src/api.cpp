#include "bcj/api.hpp"

#include <httplib.h>

#include <vector>

#include "bcj/errors.hpp"
#include "bcj/json_io.hpp"

namespace bcj {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::StalePair:
    case ErrorCode::BudgetExhausted:
      return 409;
    case ErrorCode::Unauthorized:
      return 401;
    case ErrorCode::Io:
      return 500;
    default:
      return 400;
  }
}

namespace {

ApiResponse error_response(ErrorCode code, const std::string& message) {
  return {http_status(code), json{{"error", to_string(code)}, {"message", message}}};
}

ApiResponse not_found() {
  return {404, json{{"error", "not_found"}, {"message", "no such route"}}};
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto start = path.find_first_not_of('/');
    if (start == std::string_view::npos) break;
    path.remove_prefix(start);
    const auto end = path.find('/');
    parts.push_back(path.substr(0, end));
    if (end == std::string_view::npos) break;
    path.remove_prefix(end);
  }
  return parts;
}

json parse_body(std::string_view body, ErrorCode code) {
  json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) throw Error(code, "request body is not valid JSON");
  return parsed;
}

}  // namespace

ApiResponse Api::handle(std::string_view method, std::string_view path,
                        const std::map<std::string, std::string>& query, std::string_view body,
                        std::string_view authorization) const {
  try {
    if (token_ && path != "/healthz" && authorization != "Bearer " + *token_) {
      throw Error(ErrorCode::Unauthorized, "missing or invalid bearer token");
    }
    return route(method, path, query, body);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return {500, json{{"error", "internal"}, {"message", e.what()}}};
  }
}

ApiResponse Api::route(std::string_view method, std::string_view path,
                       const std::map<std::string, std::string>& query, std::string_view body) const {
  const auto parts = split_path(path);
  if (parts.size() == 1 && parts[0] == "healthz" && method == "GET") {
    return {200, json{{"status", "ok"}}};
  }
  if (parts.empty() || parts[0] != "sessions") return not_found();

  if (parts.size() == 1) {
    if (method != "POST") return not_found();
    SessionConfig cfg = parse_body(body, ErrorCode::InvalidConfig).get<SessionConfig>();
    const std::string id = store_.create(cfg);
    const SessionConfig stored = store_.config(id);
    return {201, json{{"session_id", id},
                      {"mode", to_string(stored.mode)},
                      {"criteria", stored.criterion_ids()},
                      {"budget", stored.effective_budget()}}};
  }
  if (parts.size() != 3) return not_found();

  const std::string id(parts[1]);
  const std::string_view action = parts[2];
  if (method == "GET" && action == "next-pair") {
    auto judge = query.find("judge");
    if (judge == query.end() || judge->second.empty()) {
      throw Error(ErrorCode::InvalidArgument, "query parameter 'judge' is required");
    }
    return {200, to_json(store_.next_pair(id, judge->second))};
  }
  if (method == "POST" && action == "judgements") {
    const Mode mode = store_.config(id).mode;
    const Submission s = submission_from_json(parse_body(body, ErrorCode::MalformedJudgement), mode);
    SubmitResult r = store_.submit(id, s);
    return {201, json{{"accepted", true}, {"sequence", r.recorded.sequence}, {"next", to_json(r.next)}}};
  }
  if (method == "GET" && (action == "results" || action == "agreement")) {
    std::optional<std::string> judge;
    if (auto it = query.find("judge"); it != query.end()) judge = it->second;
    return {200, action == "results" ? store_.results(id, judge) : store_.agreement(id, judge)};
  }
  if (method == "GET" && action == "audit") {
    // Fetched first: an exception inside a braced json initialiser leaks on GCC 11.
    json judgements = store_.audit_log(id);
    return {200, json{{"session_id", id}, {"judgements", std::move(judgements)}}};
  }
  return not_found();
}

void mount(httplib::Server& server, const Api& api) {
  auto dispatch = [&api](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query[k] = v;
    const ApiResponse r =
        api.handle(req.method, req.path, query, req.body, req.get_header_value("Authorization"));
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", dispatch);
  server.Post(R"(/.*)", dispatch);
}

}  // namespace bcj
