#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bcj/posterior.hpp"

namespace bcj {

using ItemId = std::string;

/// Pair posteriors for one criterion over a fixed item set.
///
/// Posteriors are stored once per unordered pair, oriented so that the item
/// with the lower index is "first". Lookups in the other orientation return
/// the flipped belief.
class BcjModel {
 public:
  /// Throws bcj::Error(InvalidConfig) for fewer than two items or duplicate ids.
  explicit BcjModel(std::vector<ItemId> items);

  std::size_t size() const { return items_.size(); }
  const std::vector<ItemId>& items() const { return items_; }
  const ItemId& item(std::size_t index) const { return items_.at(index); }

  /// Throws bcj::Error(UnknownItem).
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  std::size_t pair_count() const { return posteriors_.size(); }
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  /// (lower, higher) item indices of the canonical pair at `pair_index`.
  std::pair<std::size_t, std::size_t> pair_at(std::size_t pair_index) const;

  /// Belief that item i beats item j (i != j).
  PairPosterior posterior(std::size_t i, std::size_t j) const;
  const PairPosterior& canonical(std::size_t pair_index) const { return posteriors_.at(pair_index); }

  void record(std::size_t winner, std::size_t loser);

  friend bool operator==(const BcjModel& a, const BcjModel& b) {
    return a.items_ == b.items_ && a.posteriors_ == b.posteriors_;
  }

 private:
  std::vector<ItemId> items_;
  std::unordered_map<ItemId, std::size_t> index_;
  std::vector<PairPosterior> posteriors_;
  std::vector<std::size_t> row_offset_;
};

/// One independent BcjModel per criterion over a shared item set, with
/// non-negative weights summing to one.
class McbjModel {
 public:
  /// Empty `weights` means uniform 1/L. Throws bcj::Error(InvalidConfig) on
  /// an empty or duplicated criterion list, mismatched weights, negative
  /// weights, or weights not summing to 1 within 1e-12.
  McbjModel(std::vector<ItemId> items, std::vector<std::string> criteria,
            std::vector<double> weights = {});

  std::size_t size() const { return models_.front().size(); }
  const std::vector<ItemId>& items() const { return models_.front().items(); }
  std::size_t criteria_count() const { return criteria_.size(); }
  const std::vector<std::string>& criteria() const { return criteria_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t criterion_index(std::string_view id) const;

  const BcjModel& model(std::size_t criterion) const { return models_.at(criterion); }
  BcjModel& model(std::size_t criterion) { return models_.at(criterion); }

  void record(std::size_t criterion, std::size_t winner, std::size_t loser) {
    models_.at(criterion).record(winner, loser);
  }

  friend bool operator==(const McbjModel&, const McbjModel&) = default;

 private:
  std::vector<std::string> criteria_;
  std::vector<double> weights_;
  std::vector<BcjModel> models_;
};

/// Throws bcj::Error(InvalidConfig) unless weights are finite, non-negative
/// and sum to 1 within 1e-12.
void validate_weights(const std::vector<double>& weights, std::size_t expected_count);

}  // namespace bcj
