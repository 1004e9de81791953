#include "bcj/selection.hpp"

#include <vector>

#include "bcj/errors.hpp"

namespace bcj {

const char* to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Random:
      return "random";
    case StrategyKind::Entropy:
      return "entropy";
    case StrategyKind::CombinedEntropy:
      return "combined_entropy";
  }
  return "entropy";
}

StrategyKind strategy_from_string(std::string_view name) {
  if (name == "random") return StrategyKind::Random;
  if (name == "entropy") return StrategyKind::Entropy;
  if (name == "combined_entropy" || name == "combined") return StrategyKind::CombinedEntropy;
  throw Error(ErrorCode::InvalidConfig, "unknown selection strategy: " + std::string(name));
}

Budget::Budget(std::size_t max_comparisons) : max_(max_comparisons) {
  if (max_ == 0) {
    throw Error(ErrorCode::InvalidConfig, "budget must allow at least one comparison");
  }
}

void Budget::consume() {
  if (exhausted()) {
    throw Error(ErrorCode::BudgetExhausted, "comparison budget exhausted");
  }
  ++used_;
}

namespace {

PresentedPair present(const BcjModel& m, std::size_t pair_index, Rng& rng) {
  const auto [lo, hi] = m.pair_at(pair_index);
  if (rng.uniform_index(2) == 0) return {lo, hi};
  return {hi, lo};
}

template <class Score>
PresentedPair argmax_pair(const BcjModel& m, Score&& score, Rng& rng) {
  std::vector<std::size_t> best;
  double best_score = 0.0;
  for (std::size_t k = 0; k < m.pair_count(); ++k) {
    const double s = score(k);
    if (best.empty() || s > best_score) {
      best.assign(1, k);
      best_score = s;
    } else if (s == best_score) {
      best.push_back(k);
    }
  }
  const std::size_t chosen = best.size() == 1 ? best.front() : best[rng.uniform_index(best.size())];
  return present(m, chosen, rng);
}

}  // namespace

PresentedPair next_pair_random(const BcjModel& m, Rng& rng) {
  return present(m, rng.uniform_index(m.pair_count()), rng);
}

PresentedPair next_pair_entropy(const BcjModel& m, Rng& rng) {
  return argmax_pair(m, [&](std::size_t k) { return beta_entropy(m.canonical(k)); }, rng);
}

double combined_entropy(const McbjModel& mm, std::size_t pair_index, bool weighted) {
  double total = 0.0;
  for (std::size_t l = 0; l < mm.criteria_count(); ++l) {
    const double h = beta_entropy(mm.model(l).canonical(pair_index));
    total += weighted ? mm.weights()[l] * h : h;
  }
  return total;
}

PresentedPair next_pair_combined_entropy(const McbjModel& mm, Rng& rng, bool weighted) {
  return argmax_pair(
      mm.model(0), [&](std::size_t k) { return combined_entropy(mm, k, weighted); }, rng);
}

PresentedPair select_next_pair(const McbjModel& mm, const SelectionStrategy& strategy, Rng& rng) {
  switch (strategy.kind) {
    case StrategyKind::Random:
      return next_pair_random(mm.model(0), rng);
    case StrategyKind::Entropy:
      return next_pair_entropy(mm.model(0), rng);
    case StrategyKind::CombinedEntropy:
      return next_pair_combined_entropy(mm, rng, strategy.weighted_entropy);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown selection strategy");
}

}  // namespace bcj
