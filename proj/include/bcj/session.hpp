#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcj/model.hpp"
#include "bcj/ranking.hpp"
#include "bcj/selection.hpp"

namespace bcj {

enum class Mode { Bcj, Mbcj };

const char* to_string(Mode mode);
Mode mode_from_string(std::string_view name);

/// Criterion id used by single-criterion (holistic) sessions.
inline constexpr const char* kHolisticCriterion = "holistic";

struct ItemSpec {
  ItemId id;
  std::string title;
  std::string content_ref;
  friend bool operator==(const ItemSpec&, const ItemSpec&) = default;
};

struct CriterionSpec {
  std::string id;
  std::string label;
  friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;
};

struct SessionConfig {
  Mode mode = Mode::Bcj;
  std::vector<ItemSpec> items;
  std::vector<CriterionSpec> criteria;  // MBCJ only
  std::vector<double> weights;          // MBCJ only; empty means uniform
  SelectionStrategy strategy;
  std::optional<std::size_t> budget;    // default: ten per item
  std::uint64_t seed = 0;

  /// Throws bcj::Error(InvalidConfig).
  void validate() const;
  std::size_t effective_budget() const;
  std::vector<ItemId> item_ids() const;
  /// {"holistic"} for BCJ.
  std::vector<std::string> criterion_ids() const;
};

/// One recorded assessor decision. `decisions` maps criterion id to the
/// winning item id; `issued_at` is the audit-log length at the moment the
/// pair was handed to the judge.
struct Judgement {
  std::uint64_t sequence = 0;
  std::string judge_id;
  ItemId left;
  ItemId right;
  std::map<std::string, ItemId> decisions;
  std::uint64_t issued_at = 0;
  std::string wall_time;
  friend bool operator==(const Judgement&, const Judgement&) = default;
};

struct Submission {
  std::string judge_id;
  ItemId left;
  ItemId right;
  std::map<std::string, ItemId> decisions;
  /// RFC 3339 UTC; the current time is used when absent.
  std::optional<std::string> wall_time;
};

struct NextPair {
  bool exhausted = false;
  ItemId left;
  ItemId right;
  std::size_t budget_remaining = 0;
};

/// A pair handed to a judge and not yet judged. `issued_at` is the audit
/// log length when it was issued.
struct PendingPair {
  PresentedPair pair;
  std::uint64_t issued_at = 0;
  friend bool operator==(const PendingPair&, const PendingPair&) = default;
};

struct SubmitResult {
  Judgement recorded;
  NextPair next;
};

/// Current UTC time as RFC 3339 with millisecond precision.
std::string utc_now_rfc3339();

/// Live state of one judging session. All model state is a fold of the
/// audit log from flat priors; `replay` rebuilds an identical session.
///
/// Not thread-safe: callers serialise access per session.
class Session {
 public:
  /// Throws bcj::Error(InvalidConfig).
  explicit Session(SessionConfig config);

  /// Folds `log` into a fresh session. Throws bcj::Error(LogMismatch) on
  /// gaps in sequence numbers, unknown items or criteria, or pairs that the
  /// configured strategy would not have issued.
  static Session replay(const SessionConfig& config, std::span<const Judgement> log);

  const SessionConfig& config() const { return config_; }
  Mode mode() const { return config_.mode; }
  const McbjModel& models() const { return models_; }
  const Budget& budget() const { return budget_; }
  const std::vector<Judgement>& audit_log() const { return log_; }

  /// Pending pair for `judge_id`, issuing a new one if none is pending.
  /// Asking again without judging returns the same pair.
  NextPair next_pair(const std::string& judge_id);

  /// Validates against the judge's pending pair, appends to the audit log,
  /// updates every criterion's posterior and issues the judge's next pair.
  /// On error the session is unchanged.
  SubmitResult submit(const Submission& submission);

  /// Pending pair of a judge, if any, without issuing one. A pair that was
  /// asked for but never judged leaves no trace in the audit log, so after
  /// a replay only pairs issued on submission are pending again.
  std::optional<PendingPair> pending(const std::string& judge_id) const;

  RankingResult ranking() const;

  nlohmann::json results() const;
  nlohmann::json agreement() const;

  /// Read-only views built from one judge's judgements only, for comparing
  /// assessors. The payloads gain a "judge" field; the budget block still
  /// describes the whole session.
  nlohmann::json results(const std::string& judge_id) const;
  nlohmann::json agreement(const std::string& judge_id) const;

 private:
  McbjModel judge_models(const std::string& judge_id) const;
  RankingResult ranking_of(const McbjModel& models) const;
  nlohmann::json results_of(const McbjModel& models) const;
  nlohmann::json agreement_of(const McbjModel& models) const;
  PresentedPair select_for(const std::string& judge_id, std::uint64_t issued_at) const;
  NextPair describe(const std::optional<PresentedPair>& pair) const;
  Judgement validate(const Submission& submission) const;
  void apply(const Judgement& j);
  void check_fold_consistency() const;

  SessionConfig config_;
  McbjModel models_;
  Budget budget_;
  std::vector<Judgement> log_;
  std::map<std::string, PendingPair> pending_;
};

}  // namespace bcj
