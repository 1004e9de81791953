#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcj/session.hpp"

namespace bcj {

/// Config and audit log as stored in one session directory.
struct StoredSession {
  SessionConfig config;
  std::vector<Judgement> log;
};

/// Reads `<dir>/config.json` and `<dir>/audit.jsonl`. Throws bcj::Error
/// (Io for missing files, InvalidConfig or LogMismatch for bad content).
StoredSession read_session_dir(const std::filesystem::path& dir);

/// Owns all live sessions. Mutations of one session are serialised by that
/// session's mutex; distinct sessions proceed in parallel.
///
/// With a data directory, each session lives in `<dir>/<id>/` as
/// `config.json` plus an append-only `audit.jsonl`; existing sessions are
/// rebuilt by replay on construction.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> data_dir = std::nullopt);

  /// Throws bcj::Error(InvalidConfig).
  std::string create(SessionConfig config);

  // All of the following throw bcj::Error(UnknownSession).
  NextPair next_pair(const std::string& session_id, const std::string& judge_id);
  SubmitResult submit(const std::string& session_id, const Submission& submission);
  /// With a judge id, only that judge's judgements are counted.
  nlohmann::json results(const std::string& session_id,
                         const std::optional<std::string>& judge_id = std::nullopt) const;
  nlohmann::json agreement(const std::string& session_id,
                           const std::optional<std::string>& judge_id = std::nullopt) const;
  std::vector<Judgement> audit_log(const std::string& session_id) const;
  SessionConfig config(const std::string& session_id) const;

  std::vector<std::string> session_ids() const;

 private:
  struct Slot {
    mutable std::mutex mutex;
    Session session;
    explicit Slot(Session s) : session(std::move(s)) {}
  };

  Slot& slot(const std::string& session_id) const;
  void load_existing();

  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::unique_ptr<Slot>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace bcj
