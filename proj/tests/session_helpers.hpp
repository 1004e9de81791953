#pragma once

#include <string>
#include <vector>

#include "bcj/rng.hpp"
#include "bcj/session.hpp"

namespace bcj::testing {

inline SessionConfig bcj_config(std::size_t n, std::uint64_t seed = 1,
                                StrategyKind strategy = StrategyKind::Entropy) {
  SessionConfig cfg;
  cfg.mode = Mode::Bcj;
  for (std::size_t i = 0; i < n; ++i) cfg.items.push_back({"item" + std::to_string(i), "Item " + std::to_string(i), ""});
  cfg.strategy.kind = strategy;
  cfg.seed = seed;
  return cfg;
}

inline SessionConfig mbcj_config(std::size_t n, std::size_t criteria, std::uint64_t seed = 1,
                                 StrategyKind strategy = StrategyKind::CombinedEntropy) {
  SessionConfig cfg = bcj_config(n, seed, strategy);
  cfg.mode = Mode::Mbcj;
  for (std::size_t l = 0; l < criteria; ++l) cfg.criteria.push_back({"lo" + std::to_string(l + 1), ""});
  return cfg;
}

/// Drives `session` with random multi-judge traffic: judges ask for pairs
/// and answer them in interleaved order, with random winners per criterion.
inline void drive_randomly(Session& session, std::size_t submissions, std::size_t judges, Rng& rng) {
  const auto criteria = session.config().criterion_ids();
  for (std::size_t k = 0; k < submissions; ++k) {
    const std::string judge = "judge" + std::to_string(rng.uniform_index(judges));
    const NextPair next = session.next_pair(judge);
    if (next.exhausted) return;
    // Another judge may also take a pair before this one answers.
    if (judges > 1 && rng.bernoulli(0.3)) session.next_pair("judge" + std::to_string(rng.uniform_index(judges)));
    Submission s{judge, next.left, next.right, {}, "2026-01-01T00:00:" + std::to_string(10 + k % 50) + ".000Z"};
    for (const auto& c : criteria) s.decisions[c] = rng.bernoulli(0.5) ? next.left : next.right;
    session.submit(s);
  }
}

}  // namespace bcj::testing
