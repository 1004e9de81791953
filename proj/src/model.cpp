#include "bcj/model.hpp"

#include <cmath>
#include <unordered_set>

#include "bcj/errors.hpp"

namespace bcj {

BcjModel::BcjModel(std::vector<ItemId> items) : items_(std::move(items)) {
  const std::size_t n = items_.size();
  if (n < 2) {
    throw Error(ErrorCode::InvalidConfig, "a model needs at least two items");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(items_[i], i).second) {
      throw Error(ErrorCode::InvalidConfig, "duplicate item id: " + items_[i]);
    }
  }
  row_offset_.resize(n);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    row_offset_[i] = offset;
    offset += n - i - 1;
  }
  posteriors_.assign(n * (n - 1) / 2, PairPosterior{});
}

std::size_t BcjModel::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownItem, "unknown item id: " + std::string(id));
  }
  return it->second;
}

bool BcjModel::contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

std::size_t BcjModel::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= size() || j >= size()) {
    throw Error(ErrorCode::InvalidArgument, "pair requires two distinct valid item indices");
  }
  if (i > j) std::swap(i, j);
  return row_offset_[i] + (j - i - 1);
}

std::pair<std::size_t, std::size_t> BcjModel::pair_at(std::size_t k) const {
  if (k >= posteriors_.size()) {
    throw Error(ErrorCode::InvalidArgument, "pair index out of range");
  }
  std::size_t i = 0;
  while (i + 1 < size() && row_offset_[i + 1] <= k) ++i;
  return {i, i + 1 + (k - row_offset_[i])};
}

PairPosterior BcjModel::posterior(std::size_t i, std::size_t j) const {
  const PairPosterior& p = posteriors_[pair_index(i, j)];
  return i < j ? p : p.flipped();
}

void BcjModel::record(std::size_t winner, std::size_t loser) {
  PairPosterior& p = posteriors_[pair_index(winner, loser)];
  p = update_pair(p, winner < loser ? Winner::First : Winner::Second);
}

void validate_weights(const std::vector<double>& weights, std::size_t expected_count) {
  if (weights.size() != expected_count) {
    throw Error(ErrorCode::InvalidConfig, "expected " + std::to_string(expected_count) +
                                              " weights, got " + std::to_string(weights.size()));
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::InvalidConfig, "weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidConfig, "weights must sum to 1");
  }
}

McbjModel::McbjModel(std::vector<ItemId> items, std::vector<std::string> criteria,
                     std::vector<double> weights)
    : criteria_(std::move(criteria)), weights_(std::move(weights)) {
  if (criteria_.empty()) {
    throw Error(ErrorCode::InvalidConfig, "at least one criterion is required");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : criteria_) {
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::InvalidConfig, "duplicate criterion id: " + c);
    }
  }
  if (weights_.empty()) {
    weights_.assign(criteria_.size(), 1.0 / static_cast<double>(criteria_.size()));
  }
  validate_weights(weights_, criteria_.size());
  BcjModel base(std::move(items));
  models_.assign(criteria_.size(), base);
}

std::size_t McbjModel::criterion_index(std::string_view id) const {
  for (std::size_t l = 0; l < criteria_.size(); ++l) {
    if (criteria_[l] == id) return l;
  }
  throw Error(ErrorCode::MalformedJudgement, "unknown criterion: " + std::string(id));
}

}  // namespace bcj
