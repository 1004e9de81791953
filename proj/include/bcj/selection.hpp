#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "bcj/model.hpp"
#include "bcj/rng.hpp"

namespace bcj {

enum class StrategyKind { Random, Entropy, CombinedEntropy };

const char* to_string(StrategyKind kind);
/// Accepts "random", "entropy", "combined_entropy" (also "combined").
StrategyKind strategy_from_string(std::string_view name);

struct SelectionStrategy {
  StrategyKind kind = StrategyKind::Entropy;
  /// Weight each criterion's entropy by its model weight in the combined
  /// score. Off by default: the combined score is the plain sum.
  bool weighted_entropy = false;
};

/// Item indices in presentation order.
struct PresentedPair {
  std::size_t left = 0;
  std::size_t right = 0;
  friend bool operator==(const PresentedPair&, const PresentedPair&) = default;
};

class Budget {
 public:
  /// Throws bcj::Error(InvalidConfig) if max_comparisons == 0.
  explicit Budget(std::size_t max_comparisons);

  std::size_t max_comparisons() const { return max_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return max_ - used_; }
  bool exhausted() const { return used_ >= max_; }
  /// Throws bcj::Error(BudgetExhausted) when nothing remains.
  void consume();

 private:
  std::size_t max_;
  std::size_t used_ = 0;
};

/// Ten comparisons per item.
inline std::size_t default_budget(std::size_t items) { return items * 10; }

inline std::size_t budget_remaining(const Budget& b) { return b.remaining(); }

PresentedPair next_pair_random(const BcjModel& m, Rng& rng);

/// Pair whose posterior has maximal differential entropy; exact ties are
/// broken uniformly via `rng`.
PresentedPair next_pair_entropy(const BcjModel& m, Rng& rng);

double combined_entropy(const McbjModel& mm, std::size_t pair_index, bool weighted);

PresentedPair next_pair_combined_entropy(const McbjModel& mm, Rng& rng, bool weighted = false);

/// Dispatches on the strategy. Random and Entropy act on the first criterion
/// model when given a multi-criteria model.
PresentedPair select_next_pair(const McbjModel& mm, const SelectionStrategy& strategy, Rng& rng);

}  // namespace bcj
