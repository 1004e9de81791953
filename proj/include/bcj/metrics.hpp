#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bcj/model.hpp"

namespace bcj {

/// Normalised Kendall tau rank distance between two orderings.
struct TauDistance {
  std::size_t discordant_pairs = 0;
  std::size_t total_pairs = 0;
  double normalised = 0.0;
};

/// Throws bcj::Error(InvalidArgument) unless `a` and `b` are permutations
/// of the same set of distinct ids.
TauDistance kendall_tau_distance(std::span<const ItemId> a, std::span<const ItemId> b);

/// Expected agreement: 2 |mean - 0.5|. At least 0.5 exactly when the mean
/// lies outside (0.25, 0.75).
double expected_agreement(const PairPosterior& p);

/// Mode agreement: 2 |mode - 0.5|, with the uniform mode taken as 0.5.
double mode_agreement(const PairPosterior& p);

/// MAP and EAP for every unordered pair of one model. Values are stored for
/// i < j and read symmetrically.
class AgreementMatrix {
 public:
  explicit AgreementMatrix(const BcjModel& m);

  std::size_t size() const { return items_.size(); }
  const std::vector<ItemId>& items() const { return items_; }
  double map(std::size_t i, std::size_t j) const { return map_[index(i, j)]; }
  double eap(std::size_t i, std::size_t j) const { return eap_[index(i, j)]; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::vector<ItemId> items_;
  std::vector<double> map_;
  std::vector<double> eap_;
};

inline AgreementMatrix agreement_heatmap(const BcjModel& m) { return AgreementMatrix(m); }

/// Per-criterion heatmaps of a multi-criteria model.
std::vector<AgreementMatrix> agreement_heatmaps(const McbjModel& mm);

/// Model whose pair posteriors pool the counts of every criterion; used for
/// the holistic agreement view of a multi-criteria session.
BcjModel pooled_model(const McbjModel& mm);

}  // namespace bcj
