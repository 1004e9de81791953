#include "bcj/store.hpp"

#include <fstream>

#include "bcj/errors.hpp"
#include "bcj/json_io.hpp"

namespace bcj {

namespace fs = std::filesystem;

namespace {

constexpr const char* kConfigFile = "config.json";
constexpr const char* kAuditFile = "audit.jsonl";

void write_config(const fs::path& dir, const SessionConfig& config) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::ofstream out(dir / kConfigFile, std::ios::binary);
  out << nlohmann::json(config).dump(2) << '\n';
  std::ofstream touch(dir / kAuditFile, std::ios::binary | std::ios::app);
  if (!out || !touch) throw Error(ErrorCode::Io, "cannot write session files in " + dir.string());
}

void append_judgement(const fs::path& dir, const Judgement& j) {
  const fs::path path = dir / kAuditFile;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  write_audit_line(out, j);
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "cannot append to " + path.string());
}

}  // namespace

StoredSession read_session_dir(const fs::path& dir) {
  std::ifstream cfg_in(dir / kConfigFile);
  if (!cfg_in) throw Error(ErrorCode::Io, "cannot read " + (dir / kConfigFile).string());
  const nlohmann::json cfg = nlohmann::json::parse(cfg_in, nullptr, /*allow_exceptions=*/false);
  if (cfg.is_discarded()) throw Error(ErrorCode::InvalidConfig, (dir / kConfigFile).string() + " is not JSON");
  std::ifstream log_in(dir / kAuditFile);
  if (!log_in) throw Error(ErrorCode::Io, "cannot read " + (dir / kAuditFile).string());
  return {cfg.get<SessionConfig>(), read_audit_log(log_in)};
}

SessionStore::SessionStore(std::optional<fs::path> data_dir) : data_dir_(std::move(data_dir)) {
  if (data_dir_) load_existing();
}

void SessionStore::load_existing() {
  std::error_code ec;
  fs::create_directories(*data_dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + data_dir_->string() + ": " + ec.message());
  for (const auto& entry : fs::directory_iterator(*data_dir_)) {
    if (!entry.is_directory() || !fs::exists(entry.path() / kConfigFile)) continue;
    const StoredSession stored = read_session_dir(entry.path());
    const std::string id = entry.path().filename().string();
    sessions_.emplace(id, std::make_unique<Slot>(Session::replay(stored.config, stored.log)));
    if (id.rfind("session-", 0) == 0) {
      try {
        next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(8)) + 1);
      } catch (const std::exception&) {
      }
    }
  }
}

std::string SessionStore::create(SessionConfig config) {
  Session session(std::move(config));
  std::unique_lock lock(mutex_);
  const std::string id = "session-" + std::to_string(next_id_++);
  if (data_dir_) write_config(*data_dir_ / id, session.config());
  sessions_.emplace(id, std::make_unique<Slot>(std::move(session)));
  return id;
}

SessionStore::Slot& SessionStore::slot(const std::string& session_id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::UnknownSession, "unknown session: " + session_id);
  }
  return *it->second;
}

NextPair SessionStore::next_pair(const std::string& session_id, const std::string& judge_id) {
  Slot& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  return s.session.next_pair(judge_id);
}

SubmitResult SessionStore::submit(const std::string& session_id, const Submission& submission) {
  Slot& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  if (!data_dir_) return s.session.submit(submission);
  // Persist before publishing so the on-disk log never lags the live state.
  Session staged = s.session;
  SubmitResult result = staged.submit(submission);
  append_judgement(*data_dir_ / session_id, result.recorded);
  s.session = std::move(staged);
  return result;
}

nlohmann::json SessionStore::results(const std::string& session_id,
                                   const std::optional<std::string>& judge_id) const {
  Slot& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  return judge_id ? s.session.results(*judge_id) : s.session.results();
}

nlohmann::json SessionStore::agreement(const std::string& session_id,
                                   const std::optional<std::string>& judge_id) const {
  Slot& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  return judge_id ? s.session.agreement(*judge_id) : s.session.agreement();
}

std::vector<Judgement> SessionStore::audit_log(const std::string& session_id) const {
  Slot& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  return s.session.audit_log();
}

SessionConfig SessionStore::config(const std::string& session_id) const {
  Slot& s = slot(session_id);
  std::lock_guard lock(s.mutex);
  return s.session.config();
}

std::vector<std::string> SessionStore::session_ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

}  // namespace bcj
