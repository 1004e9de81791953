#include "bcj/json_io.hpp"

#include <string>

#include "bcj/errors.hpp"

namespace bcj {

using nlohmann::json;

void to_json(json& j, const SessionConfig& cfg) {
  j = json::object();
  j["mode"] = to_string(cfg.mode);
  json items = json::array();
  for (const auto& it : cfg.items) {
    items.push_back({{"id", it.id}, {"title", it.title}, {"content_ref", it.content_ref}});
  }
  j["items"] = std::move(items);
  json criteria = json::array();
  for (const auto& c : cfg.criteria) criteria.push_back({{"id", c.id}, {"label", c.label}});
  j["criteria"] = std::move(criteria);
  j["weights"] = cfg.weights;
  j["strategy"] = {{"kind", to_string(cfg.strategy.kind)},
                   {"weighted_entropy", cfg.strategy.weighted_entropy}};
  if (cfg.budget) {
    j["budget"] = *cfg.budget;
  } else {
    j["budget"] = nullptr;
  }
  j["seed"] = cfg.seed;
}

void from_json(const json& j, SessionConfig& cfg) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "session config must be an object");
    cfg = SessionConfig{};
    cfg.mode = mode_from_string(j.value("mode", std::string("BCJ")));
    for (const auto& it : j.at("items")) {
      if (it.is_string()) {
        cfg.items.push_back({it.get<std::string>(), "", ""});
      } else {
        cfg.items.push_back({it.at("id").get<std::string>(), it.value("title", std::string()),
                             it.value("content_ref", std::string())});
      }
    }
    if (j.contains("criteria") && !j.at("criteria").is_null()) {
      for (const auto& c : j.at("criteria")) {
        if (c.is_string()) {
          cfg.criteria.push_back({c.get<std::string>(), c.get<std::string>()});
        } else {
          cfg.criteria.push_back({c.at("id").get<std::string>(), c.value("label", std::string())});
        }
      }
    }
    if (j.contains("weights") && !j.at("weights").is_null()) {
      cfg.weights = j.at("weights").get<std::vector<double>>();
    }
    if (j.contains("strategy")) {
      const json& s = j.at("strategy");
      if (s.is_string()) {
        cfg.strategy.kind = strategy_from_string(s.get<std::string>());
      } else {
        cfg.strategy.kind = strategy_from_string(s.at("kind").get<std::string>());
        cfg.strategy.weighted_entropy = s.value("weighted_entropy", false);
      }
    } else {
      cfg.strategy.kind =
          cfg.mode == Mode::Mbcj ? StrategyKind::CombinedEntropy : StrategyKind::Entropy;
    }
    if (j.contains("budget") && !j.at("budget").is_null()) {
      if (!j.at("budget").is_number_integer() || j.at("budget").get<std::int64_t>() < 0) {
        throw Error(ErrorCode::InvalidConfig, "budget must be a positive integer");
      }
      cfg.budget = j.at("budget").get<std::size_t>();
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("malformed session config: ") + e.what());
  }
}

void to_json(json& j, const Judgement& judgement) {
  j = json{{"sequence", judgement.sequence},
           {"judge_id", judgement.judge_id},
           {"pair", json::array({judgement.left, judgement.right})},
           {"decisions", judgement.decisions},
           {"issued_at", judgement.issued_at},
           {"wall_time", judgement.wall_time}};
}

void from_json(const json& j, Judgement& judgement) {
  try {
    judgement.sequence = j.at("sequence").get<std::uint64_t>();
    judgement.judge_id = j.at("judge_id").get<std::string>();
    const json& pair = j.at("pair");
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorCode::LogMismatch, "judgement pair must have two entries");
    }
    judgement.left = pair[0].get<std::string>();
    judgement.right = pair[1].get<std::string>();
    judgement.decisions = j.at("decisions").get<std::map<std::string, std::string>>();
    judgement.issued_at = j.at("issued_at").get<std::uint64_t>();
    judgement.wall_time = j.at("wall_time").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LogMismatch, std::string("malformed judgement: ") + e.what());
  }
}

Submission submission_from_json(const json& j, Mode mode) {
  try {
    Submission s;
    s.judge_id = j.at("judge_id").get<std::string>();
    const json& pair = j.at("pair");
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorCode::MalformedJudgement, "pair must have exactly two item ids");
    }
    s.left = pair[0].get<std::string>();
    s.right = pair[1].get<std::string>();
    if (j.contains("decisions")) {
      s.decisions = j.at("decisions").get<std::map<std::string, std::string>>();
      if (j.contains("winner")) {
        throw Error(ErrorCode::MalformedJudgement, "give either winner or decisions, not both");
      }
    } else if (j.contains("winner")) {
      if (mode != Mode::Bcj) {
        throw Error(ErrorCode::MalformedJudgement,
                    "multi-criteria judgements need one decision per criterion");
      }
      s.decisions[kHolisticCriterion] = j.at("winner").get<std::string>();
    } else {
      throw Error(ErrorCode::MalformedJudgement, "judgement has no decisions");
    }
    if (j.contains("wall_time")) s.wall_time = j.at("wall_time").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJudgement, std::string("malformed judgement: ") + e.what());
  }
}

json to_json(const RankDensity& d) {
  return json{{"item", d.item}, {"expected_rank", d.expected_rank}, {"density", d.probabilities}};
}

json to_json(const NextPair& next) {
  if (next.exhausted) {
    return json{{"status", "exhausted"}, {"budget_remaining", 0}};
  }
  return json{{"status", "pair"},
              {"pair", {{"left", next.left}, {"right", next.right}}},
              {"budget_remaining", next.budget_remaining}};
}

void write_audit_line(std::ostream& os, const Judgement& judgement) {
  os << json(judgement).dump() << '\n';
}

std::vector<Judgement> read_audit_log(std::istream& is) {
  std::vector<Judgement> log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json parsed = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      throw Error(ErrorCode::LogMismatch, "audit log line " + std::to_string(line_no) + " is not JSON");
    }
    log.push_back(parsed.get<Judgement>());
  }
  return log;
}

}  // namespace bcj
