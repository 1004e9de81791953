#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "bcj/ranking.hpp"
#include "bcj/session.hpp"

namespace bcj {

void to_json(nlohmann::json& j, const SessionConfig& cfg);
/// Throws bcj::Error(InvalidConfig) on missing or mistyped fields.
void from_json(const nlohmann::json& j, SessionConfig& cfg);

void to_json(nlohmann::json& j, const Judgement& judgement);
/// Throws bcj::Error(LogMismatch).
void from_json(const nlohmann::json& j, Judgement& judgement);

/// Accepts either {"winner": id} (holistic) or {"decisions": {...}}.
/// Throws bcj::Error(MalformedJudgement).
Submission submission_from_json(const nlohmann::json& j, Mode mode);

nlohmann::json to_json(const RankDensity& d);
nlohmann::json to_json(const NextPair& next);

/// One JSON object per line, LF-terminated.
void write_audit_line(std::ostream& os, const Judgement& judgement);
/// Throws bcj::Error(LogMismatch) on malformed lines; blank lines are skipped.
std::vector<Judgement> read_audit_log(std::istream& is);

}  // namespace bcj
