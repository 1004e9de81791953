#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bcj/errors.hpp"
#include "bcj/model.hpp"
#include "bcj/ranking.hpp"

namespace bcj {

/// One observed comparison between item indices.
struct Comparison {
  std::size_t winner = 0;
  std::size_t loser = 0;
};

/// Bradley-Terry strengths, normalised to sum to one.
struct BtmScores {
  std::vector<double> strengths;
  std::size_t iterations = 0;
  bool converged = false;
  /// Log-likelihood of the starting point followed by one entry per MM step.
  std::vector<double> log_likelihood_trace;
};

/// Raised when the directed win graph is not strongly connected, in which
/// case no finite maximum-likelihood estimate exists.
class DisconnectedGraphError : public Error {
 public:
  explicit DisconnectedGraphError(std::vector<std::vector<std::size_t>> components);
  const std::vector<std::vector<std::size_t>>& components() const { return components_; }

 private:
  std::vector<std::vector<std::size_t>> components_;
};

/// Strongly connected components of the winner -> loser graph, each sorted,
/// ordered by smallest member.
std::vector<std::vector<std::size_t>> win_graph_components(std::span<const Comparison> comparisons,
                                                           std::size_t item_count);

double btm_log_likelihood(std::span<const Comparison> comparisons, std::span<const double> strengths);

/// Minorisation-maximisation fit (Hunter 2004):
///   p_i <- W_i / sum_{j != i} n_ij / (p_i + p_j),
/// renormalised every step, until the largest change is below `tolerance`
/// or `max_iterations` steps have run (then `converged` is false and the
/// last iterate is returned).
///
/// Throws DisconnectedGraphError if the win graph is not strongly connected
/// and bcj::Error(InvalidArgument) for a non-positive tolerance or bad index.
BtmScores btm_fit(std::span<const Comparison> comparisons, std::size_t item_count,
                  double tolerance = 1e-12, std::size_t max_iterations = 100000);

/// Items by descending strength; ties broken by the seeded shuffle.
TieBrokenOrder btm_ranking(const BtmScores& scores, std::span<const ItemId> items, std::uint64_t seed);

}  // namespace bcj
