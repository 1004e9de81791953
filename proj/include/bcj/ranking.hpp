#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bcj/model.hpp"

namespace bcj {

/// Distribution over ranks 1..N for one item; probabilities[r-1] = P(rank = r).
struct RankDensity {
  ItemId item;
  std::vector<double> probabilities;
  double expected_rank = 0.0;
};

/// A run of items whose sort keys coincided and were ordered by the seeded
/// tie-break, in the final order.
struct TieGroup {
  double key = 0.0;
  std::vector<ItemId> items;
};

struct RankingResult {
  std::vector<ItemId> order;          // rank 1 first
  std::vector<RankDensity> densities;  // aligned with `order`
  std::vector<TieGroup> tie_breaks;
};

/// Row-major N x N matrix; entry (i, j) is the posterior mean that i beats j.
struct WinMatrix {
  std::size_t n = 0;
  std::vector<double> values;
  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

/// Sort keys closer than this are treated as tied.
inline constexpr double kTieTolerance = 1e-9;

WinMatrix win_probability_matrix(const BcjModel& m);

/// Poisson-binomial rank density from the item's win probabilities against
/// every other item: rank = N - wins.
RankDensity rank_density_from_win_probabilities(ItemId item, std::span<const double> win_probs);

double expected_rank(std::span<const double> probabilities);

RankDensity rank_density_exact(const BcjModel& m, std::size_t item);
RankDensity rank_density_exact(const BcjModel& m, std::string_view item);
std::vector<RankDensity> rank_densities_exact(const BcjModel& m);

/// Monte-Carlo estimate from explicit win probabilities.
RankDensity rank_density_mc_from_win_probabilities(ItemId item, std::span<const double> win_probs,
                                                   std::size_t samples, std::uint64_t seed);

/// Monte-Carlo estimate: each replicate draws every Bernoulli(p_ij) once.
/// Throws bcj::Error(InvalidArgument) if samples == 0.
RankDensity rank_density_mc(const BcjModel& m, std::size_t item, std::size_t samples,
                            std::uint64_t seed);
/// All items from shared replicates (one draw per pair per replicate).
std::vector<RankDensity> rank_densities_mc(const BcjModel& m, std::size_t samples,
                                           std::uint64_t seed);

/// Orders `ids` by ascending key (descending when `descending`). Keys within
/// kTieTolerance of the first key in a run form a tie group, ordered by a
/// per-item pseudo-random key derived from (seed, item id). The order never
/// depends on the position of an item in the input.
struct TieBrokenOrder {
  std::vector<std::size_t> order;
  std::vector<TieGroup> tie_breaks;
};
TieBrokenOrder tie_broken_order(std::span<const ItemId> ids, std::span<const double> keys,
                                bool descending, std::uint64_t seed);

/// Orders densities by expected rank with the seeded tie-break.
RankingResult rank_by_expected_rank(std::vector<RankDensity> densities, std::uint64_t seed);

RankingResult overall_ranking(const BcjModel& m, std::uint64_t seed);

/// Combined ranking of a multi-criteria model (one combined density per item).
RankingResult overall_ranking(const McbjModel& mm, std::uint64_t seed);

/// Weighted sum of per-criterion rank CDFs, returned as a pmf. Throws
/// bcj::Error(InvalidArgument) on mismatched lengths or invalid weights.
RankDensity combine_criteria(std::span<const RankDensity> densities, std::span<const double> weights);

/// Cumulative distribution F(r) = P(rank <= r) for r = 1..N.
std::vector<double> cumulative(std::span<const double> probabilities);

struct RadarSummary {
  ItemId item;
  std::vector<double> per_criterion;  // expected rank per criterion
  double combined = 0.0;
};

RadarSummary radar_summary(const McbjModel& mm, std::size_t item);
RadarSummary radar_summary(const McbjModel& mm, std::string_view item);

}  // namespace bcj
