#include "bcj/session.hpp"

#include <chrono>
#include <ctime>
#include <set>
#include <unordered_set>

#include "bcj/errors.hpp"
#include "bcj/json_io.hpp"
#include "bcj/metrics.hpp"
#include "bcj/rng.hpp"

namespace bcj {

using nlohmann::json;

const char* to_string(Mode mode) { return mode == Mode::Bcj ? "BCJ" : "MBCJ"; }

Mode mode_from_string(std::string_view name) {
  if (name == "BCJ" || name == "bcj") return Mode::Bcj;
  if (name == "MBCJ" || name == "mbcj") return Mode::Mbcj;
  throw Error(ErrorCode::InvalidConfig, "unknown mode: " + std::string(name));
}

void SessionConfig::validate() const {
  if (items.size() < 2) {
    throw Error(ErrorCode::InvalidConfig, "a session needs at least two items");
  }
  std::unordered_set<std::string> ids;
  for (const auto& it : items) {
    if (it.id.empty()) throw Error(ErrorCode::InvalidConfig, "item ids must be non-empty");
    if (!ids.insert(it.id).second) throw Error(ErrorCode::InvalidConfig, "duplicate item id: " + it.id);
  }
  if (mode == Mode::Bcj) {
    if (!criteria.empty() || !weights.empty()) {
      throw Error(ErrorCode::InvalidConfig, "BCJ sessions use a single holistic criterion");
    }
    if (strategy.kind == StrategyKind::CombinedEntropy) {
      throw Error(ErrorCode::InvalidConfig, "combined entropy selection needs an MBCJ session");
    }
  } else {
    if (criteria.empty()) throw Error(ErrorCode::InvalidConfig, "MBCJ sessions need at least one criterion");
    std::unordered_set<std::string> cids;
    for (const auto& c : criteria) {
      if (c.id.empty()) throw Error(ErrorCode::InvalidConfig, "criterion ids must be non-empty");
      if (!cids.insert(c.id).second) throw Error(ErrorCode::InvalidConfig, "duplicate criterion id: " + c.id);
    }
    if (!weights.empty()) validate_weights(weights, criteria.size());
  }
  if (budget && *budget == 0) {
    throw Error(ErrorCode::InvalidConfig, "budget must allow at least one comparison");
  }
}

std::size_t SessionConfig::effective_budget() const { return budget.value_or(default_budget(items.size())); }

std::vector<ItemId> SessionConfig::item_ids() const {
  std::vector<ItemId> ids;
  ids.reserve(items.size());
  for (const auto& it : items) ids.push_back(it.id);
  return ids;
}

std::vector<std::string> SessionConfig::criterion_ids() const {
  if (mode == Mode::Bcj) return {kHolisticCriterion};
  std::vector<std::string> ids;
  ids.reserve(criteria.size());
  for (const auto& c : criteria) ids.push_back(c.id);
  return ids;
}

std::string utc_now_rfc3339() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::time_point_cast<std::chrono::seconds>(now);
  const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(now - secs).count();
  const std::time_t t = std::chrono::system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(millis));
  return out;
}

Session::Session(SessionConfig config)
    : config_((config.validate(), std::move(config))),
      models_(config_.item_ids(), config_.criterion_ids(), config_.weights),
      budget_(config_.effective_budget()) {}

PresentedPair Session::select_for(const std::string& judge_id, std::uint64_t issued_at) const {
  Rng rng(derive_seed(derive_seed(config_.seed, issued_at), hash_string(judge_id)));
  return select_next_pair(models_, config_.strategy, rng);
}

NextPair Session::describe(const std::optional<PresentedPair>& pair) const {
  if (!pair) return NextPair{true, {}, {}, 0};
  return NextPair{false, models_.items()[pair->left], models_.items()[pair->right], budget_.remaining()};
}

std::optional<PendingPair> Session::pending(const std::string& judge_id) const {
  auto it = pending_.find(judge_id);
  if (it == pending_.end()) return std::nullopt;
  return it->second;
}

NextPair Session::next_pair(const std::string& judge_id) {
  if (judge_id.empty()) {
    throw Error(ErrorCode::InvalidArgument, "judge id must be non-empty");
  }
  if (budget_.exhausted()) return describe(std::nullopt);
  auto it = pending_.find(judge_id);
  if (it == pending_.end()) {
    const std::uint64_t now = log_.size();
    it = pending_.emplace(judge_id, PendingPair{select_for(judge_id, now), now}).first;
  }
  return describe(it->second.pair);
}

Judgement Session::validate(const Submission& s) const {
  auto it = pending_.find(s.judge_id);
  if (it == pending_.end()) {
    throw Error(ErrorCode::StalePair, "no pair is pending for judge " + s.judge_id);
  }
  const BcjModel& base = models_.model(0);
  const PresentedPair& p = it->second.pair;
  const ItemId& left = base.item(p.left);
  const ItemId& right = base.item(p.right);
  const bool same = (s.left == left && s.right == right) || (s.left == right && s.right == left);
  if (!same) {
    throw Error(ErrorCode::StalePair, "submitted pair (" + s.left + ", " + s.right +
                                          ") does not match the pending pair (" + left + ", " + right + ")");
  }
  if (budget_.exhausted()) {
    throw Error(ErrorCode::BudgetExhausted, "comparison budget exhausted");
  }
  if (s.decisions.size() != models_.criteria_count()) {
    throw Error(ErrorCode::MalformedJudgement, "expected exactly one winner for each of " +
                                                   std::to_string(models_.criteria_count()) + " criteria");
  }
  for (const auto& [criterion, winner] : s.decisions) {
    models_.criterion_index(criterion);
    if (winner != left && winner != right) {
      throw Error(ErrorCode::MalformedJudgement, "winner " + winner + " is not part of the pair");
    }
  }
  Judgement j;
  j.sequence = log_.size() + 1;
  j.judge_id = s.judge_id;
  j.left = left;
  j.right = right;
  j.decisions = s.decisions;
  j.issued_at = it->second.issued_at;
  j.wall_time = s.wall_time.value_or(utc_now_rfc3339());
  return j;
}

void Session::apply(const Judgement& j) {
  const BcjModel& base = models_.model(0);
  const std::size_t left = base.index_of(j.left);
  const std::size_t right = base.index_of(j.right);
  for (const auto& [criterion, winner] : j.decisions) {
    const std::size_t l = models_.criterion_index(criterion);
    if (winner == j.left) {
      models_.record(l, left, right);
    } else {
      models_.record(l, right, left);
    }
  }
  budget_.consume();
  log_.push_back(j);
}

SubmitResult Session::submit(const Submission& submission) {
  Judgement j = validate(submission);
  apply(j);
  pending_.erase(j.judge_id);
  SubmitResult result{std::move(j), NextPair{}};
  result.next = next_pair(result.recorded.judge_id);
#ifndef NDEBUG
  check_fold_consistency();
#endif
  return result;
}

void Session::check_fold_consistency() const {
  McbjModel folded(config_.item_ids(), config_.criterion_ids(), config_.weights);
  for (const auto& j : log_) {
    const std::size_t left = folded.model(0).index_of(j.left);
    const std::size_t right = folded.model(0).index_of(j.right);
    for (const auto& [criterion, winner] : j.decisions) {
      const std::size_t l = folded.criterion_index(criterion);
      winner == j.left ? folded.record(l, left, right) : folded.record(l, right, left);
    }
  }
  if (!(folded == models_) || budget_.used() != log_.size()) {
    throw Error(ErrorCode::LogMismatch, "session state diverged from its audit log");
  }
}

Session Session::replay(const SessionConfig& config, std::span<const Judgement> log) {
  Session session(config);
  const std::size_t n = log.size();

  std::map<std::string, std::uint64_t> last_sequence;
  std::multimap<std::uint64_t, std::size_t> issued_at;  // log length -> entry
  for (std::size_t k = 0; k < n; ++k) {
    const Judgement& j = log[k];
    if (j.sequence != k + 1) {
      throw Error(ErrorCode::LogMismatch, "audit log sequence gap at entry " + std::to_string(k + 1));
    }
    if (j.issued_at >= j.sequence) {
      throw Error(ErrorCode::LogMismatch, "judgement " + std::to_string(j.sequence) +
                                              " was issued after it was recorded");
    }
    // A judge's next pair is issued as soon as their previous one is judged.
    auto previous = last_sequence.find(j.judge_id);
    if (previous != last_sequence.end() && j.issued_at != previous->second) {
      throw Error(ErrorCode::LogMismatch, "judgement " + std::to_string(j.sequence) +
                                              " does not follow the judge's previous submission");
    }
    last_sequence[j.judge_id] = j.sequence;
    issued_at.emplace(j.issued_at, k);
  }

  // Pairs each judgement was issued, recomputed at the state it was issued in.
  std::vector<std::optional<PresentedPair>> expected(n);
  auto issue_at_current_length = [&]() {
    const std::uint64_t len = session.log_.size();
    auto [begin, end] = issued_at.equal_range(len);
    for (auto it = begin; it != end; ++it) {
      expected[it->second] = session.select_for(log[it->second].judge_id, len);
    }
  };

  issue_at_current_length();
  for (std::size_t k = 0; k < n; ++k) {
    const Judgement& j = log[k];
    try {
      const BcjModel& base = session.models_.model(0);
      const PresentedPair want = *expected[k];
      if (base.item(want.left) != j.left || base.item(want.right) != j.right) {
        throw Error(ErrorCode::LogMismatch, "judgement " + std::to_string(j.sequence) +
                                                " records a pair the strategy would not have issued");
      }
      session.pending_[j.judge_id] = PendingPair{want, j.issued_at};
      Submission s{j.judge_id, j.left, j.right, j.decisions, j.wall_time};
      Judgement rebuilt = session.validate(s);
      if (!(rebuilt == j)) {
        throw Error(ErrorCode::LogMismatch, "judgement " + std::to_string(j.sequence) + " does not replay");
      }
      session.apply(rebuilt);
      session.pending_.erase(j.judge_id);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::LogMismatch) throw;
      throw Error(ErrorCode::LogMismatch,
                  "judgement " + std::to_string(j.sequence) + " rejected on replay: " + e.what());
    }
    issue_at_current_length();
    if (last_sequence[j.judge_id] == j.sequence && !session.budget_.exhausted()) {
      const std::uint64_t len = session.log_.size();
      session.pending_[j.judge_id] = PendingPair{session.select_for(j.judge_id, len), len};
    }
  }
  return session;
}

RankingResult Session::ranking() const { return ranking_of(models_); }

RankingResult Session::ranking_of(const McbjModel& models) const {
  if (config_.mode == Mode::Bcj) return overall_ranking(models.model(0), config_.seed);
  return overall_ranking(models, config_.seed);
}

namespace {

json matrix_json(const AgreementMatrix& m, bool use_map) {
  const std::size_t n = m.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      if (j <= i) {
        row.push_back(nullptr);
      } else {
        row.push_back(use_map ? m.map(i, j) : m.eap(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json agreement_json(const std::string& criterion, const AgreementMatrix& m) {
  return json{{"criterion", criterion}, {"map", matrix_json(m, true)}, {"eap", matrix_json(m, false)}};
}

}  // namespace

McbjModel Session::judge_models(const std::string& judge_id) const {
  McbjModel models(models_.items(), models_.criteria(), models_.weights());
  for (const Judgement& j : log_) {
    if (j.judge_id != judge_id) continue;
    for (const auto& [criterion, winner] : j.decisions) {
      const std::size_t l = models.criterion_index(criterion);
      const BcjModel& m = models.model(l);
      const std::size_t w = m.index_of(winner);
      const std::size_t loser = m.index_of(winner == j.left ? j.right : j.left);
      models.record(l, w, loser);
    }
  }
  return models;
}

json Session::agreement() const { return agreement_of(models_); }

json Session::agreement(const std::string& judge_id) const {
  json out = agreement_of(judge_models(judge_id));
  out["judge"] = judge_id;
  return out;
}

json Session::agreement_of(const McbjModel& models) const {
  json out{{"items", models.items()}, {"criteria", json::array()}};
  for (std::size_t l = 0; l < models.criteria_count(); ++l) {
    out["criteria"].push_back(agreement_json(models.criteria()[l], AgreementMatrix(models.model(l))));
  }
  if (config_.mode == Mode::Bcj) {
    out["holistic"] = out["criteria"][0];
  } else {
    out["holistic"] = agreement_json(kHolisticCriterion, AgreementMatrix(pooled_model(models)));
  }
  return out;
}

json Session::results() const { return results_of(models_); }

json Session::results(const std::string& judge_id) const {
  json out = results_of(judge_models(judge_id));
  out["judge"] = judge_id;
  return out;
}

json Session::results_of(const McbjModel& models) const {
  const RankingResult ranked = ranking_of(models);
  const auto& ids = models.items();
  std::map<ItemId, const ItemSpec*> specs;
  for (const auto& it : config_.items) specs[it.id] = &it;

  std::vector<std::vector<RankDensity>> per_criterion;
  if (config_.mode == Mode::Mbcj) {
    for (std::size_t l = 0; l < models.criteria_count(); ++l) {
      per_criterion.push_back(rank_densities_exact(models.model(l)));
    }
  }

  json ranking = json::array();
  for (std::size_t r = 0; r < ranked.order.size(); ++r) {
    const RankDensity& d = ranked.densities[r];
    json entry{{"rank", r + 1},
               {"item", d.item},
               {"title", specs.at(d.item)->title},
               {"content_ref", specs.at(d.item)->content_ref},
               {"expected_rank", d.expected_rank},
               {"density", d.probabilities}};
    if (config_.mode == Mode::Mbcj) {
      const std::size_t index = models.model(0).index_of(d.item);
      json criteria = json::array();
      json axes = json::array();
      json radar_values = json::array();
      for (std::size_t l = 0; l < models.criteria_count(); ++l) {
        const RankDensity& c = per_criterion[l][index];
        criteria.push_back({{"criterion", models.criteria()[l]},
                            {"expected_rank", c.expected_rank},
                            {"density", c.probabilities}});
        axes.push_back(models.criteria()[l]);
        radar_values.push_back(c.expected_rank);
      }
      entry["criteria"] = std::move(criteria);
      entry["radar"] = {{"axes", std::move(axes)},
                        {"expected_ranks", std::move(radar_values)},
                        {"combined", d.expected_rank}};
    }
    ranking.push_back(std::move(entry));
  }

  json ties = json::array();
  for (const auto& t : ranked.tie_breaks) ties.push_back({{"expected_rank", t.key}, {"items", t.items}});

  std::vector<double> grid(101);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k) / 100.0;
  json pdfs = json::array();
  for (std::size_t l = 0; l < models.criteria_count(); ++l) {
    const BcjModel& m = models.model(l);
    for (std::size_t k = 0; k < m.pair_count(); ++k) {
      const PairPosterior& p = m.canonical(k);
      if (p.observations() == 0.0) continue;
      const auto [i, j] = m.pair_at(k);
      pdfs.push_back({{"criterion", models.criteria()[l]},
                      {"pair", {ids[i], ids[j]}},
                      {"alpha", p.alpha},
                      {"beta", p.beta},
                      {"mean", posterior_mean(p)},
                      {"mode", posterior_mode(p)},
                      {"x", grid},
                      {"pdf", posterior_pdf(p, grid)}});
    }
  }

  return json{{"mode", to_string(config_.mode)},
              {"criteria", models.criteria()},
              {"weights", models.weights()},
              {"budget",
               {{"max", budget_.max_comparisons()}, {"used", budget_.used()}, {"remaining", budget_.remaining()}}},
              {"ranking", std::move(ranking)},
              {"tie_breaks", std::move(ties)},
              {"agreement", agreement_of(models)},
              {"decision_pdfs", std::move(pdfs)}};
}

}  // namespace bcj
