#include "bcj/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bcj/errors.hpp"
#include "bcj/rng.hpp"

namespace bcj {

WinMatrix win_probability_matrix(const BcjModel& m) {
  const std::size_t n = m.size();
  WinMatrix w{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t k = 0; k < m.pair_count(); ++k) {
    const auto [i, j] = m.pair_at(k);
    const double p = posterior_mean(m.canonical(k));
    w.values[i * n + j] = p;
    w.values[j * n + i] = posterior_mean(m.canonical(k).flipped());
  }
  return w;
}

double expected_rank(std::span<const double> probabilities) {
  double e = 0.0;
  for (std::size_t r = 0; r < probabilities.size(); ++r) {
    e += static_cast<double>(r + 1) * probabilities[r];
  }
  return e;
}

RankDensity rank_density_from_win_probabilities(ItemId item, std::span<const double> win_probs) {
  // wins[k] = P(k wins so far), one Bernoulli convolution per opponent.
  std::vector<double> wins{1.0};
  wins.reserve(win_probs.size() + 1);
  for (double p : win_probs) {
    wins.push_back(0.0);
    for (std::size_t k = wins.size() - 1; k > 0; --k) {
      wins[k] = wins[k] * (1.0 - p) + wins[k - 1] * p;
    }
    wins[0] *= (1.0 - p);
  }
  const std::size_t n = wins.size();
  RankDensity d{std::move(item), std::vector<double>(n, 0.0), 0.0};
  for (std::size_t r = 1; r <= n; ++r) {
    d.probabilities[r - 1] = wins[n - r];
  }
  d.expected_rank = expected_rank(d.probabilities);
  return d;
}

namespace {

std::vector<double> opponents_win_probs(const WinMatrix& w, std::size_t item) {
  std::vector<double> probs;
  probs.reserve(w.n - 1);
  for (std::size_t j = 0; j < w.n; ++j) {
    if (j != item) probs.push_back(w(item, j));
  }
  return probs;
}

void check_item(const BcjModel& m, std::size_t item) {
  if (item >= m.size()) {
    throw Error(ErrorCode::UnknownItem, "item index out of range: " + std::to_string(item));
  }
}

RankDensity density_from_counts(ItemId item, const std::vector<std::uint64_t>& counts,
                                std::size_t samples) {
  RankDensity d{std::move(item), std::vector<double>(counts.size(), 0.0), 0.0};
  for (std::size_t r = 0; r < counts.size(); ++r) {
    d.probabilities[r] = static_cast<double>(counts[r]) / static_cast<double>(samples);
  }
  d.expected_rank = expected_rank(d.probabilities);
  return d;
}

}  // namespace

RankDensity rank_density_exact(const BcjModel& m, std::size_t item) {
  check_item(m, item);
  const WinMatrix w = win_probability_matrix(m);
  return rank_density_from_win_probabilities(m.item(item), opponents_win_probs(w, item));
}

RankDensity rank_density_exact(const BcjModel& m, std::string_view item) {
  return rank_density_exact(m, m.index_of(item));
}

std::vector<RankDensity> rank_densities_exact(const BcjModel& m) {
  const WinMatrix w = win_probability_matrix(m);
  std::vector<RankDensity> out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.push_back(rank_density_from_win_probabilities(m.item(i), opponents_win_probs(w, i)));
  }
  return out;
}

RankDensity rank_density_mc_from_win_probabilities(ItemId item, std::span<const double> win_probs,
                                                   std::size_t samples, std::uint64_t seed) {
  if (samples == 0) {
    throw Error(ErrorCode::InvalidArgument, "Monte-Carlo rank density needs at least one sample");
  }
  const std::size_t n = win_probs.size() + 1;
  Rng rng(seed);
  std::vector<std::uint64_t> counts(n, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t wins = 0;
    for (double p : win_probs) wins += rng.bernoulli(p) ? 1 : 0;
    ++counts[n - wins - 1];
  }
  return density_from_counts(std::move(item), counts, samples);
}

RankDensity rank_density_mc(const BcjModel& m, std::size_t item, std::size_t samples,
                            std::uint64_t seed) {
  check_item(m, item);
  const std::vector<double> probs = opponents_win_probs(win_probability_matrix(m), item);
  return rank_density_mc_from_win_probabilities(m.item(item), probs, samples, seed);
}

std::vector<RankDensity> rank_densities_mc(const BcjModel& m, std::size_t samples,
                                           std::uint64_t seed) {
  if (samples == 0) {
    throw Error(ErrorCode::InvalidArgument, "Monte-Carlo rank density needs at least one sample");
  }
  const std::size_t n = m.size();
  std::vector<double> pair_probs(m.pair_count());
  std::vector<std::pair<std::size_t, std::size_t>> pairs(m.pair_count());
  for (std::size_t k = 0; k < m.pair_count(); ++k) {
    pair_probs[k] = posterior_mean(m.canonical(k));
    pairs[k] = m.pair_at(k);
  }
  Rng rng(seed);
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(n, 0));
  std::vector<std::size_t> wins(n);
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(wins.begin(), wins.end(), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (rng.bernoulli(pair_probs[k])) {
        ++wins[pairs[k].first];
      } else {
        ++wins[pairs[k].second];
      }
    }
    for (std::size_t i = 0; i < n; ++i) ++counts[i][n - wins[i] - 1];
  }
  std::vector<RankDensity> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(density_from_counts(m.item(i), counts[i], samples));
  return out;
}

TieBrokenOrder tie_broken_order(std::span<const ItemId> ids, std::span<const double> keys,
                                bool descending, std::uint64_t seed) {
  if (ids.size() != keys.size()) {
    throw Error(ErrorCode::InvalidArgument, "ids and keys differ in length");
  }
  const std::size_t n = ids.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return descending ? keys[a] > keys[b] : keys[a] < keys[b];
    return ids[a] < ids[b];
  });

  auto shuffle_key = [&](std::size_t i) { return mix64(seed ^ hash_string(ids[i])); };

  TieBrokenOrder result;
  result.order.reserve(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && std::abs(keys[idx[end]] - keys[idx[start]]) <= kTieTolerance) ++end;
    std::vector<std::size_t> group(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                   idx.begin() + static_cast<std::ptrdiff_t>(end));
    if (group.size() > 1) {
      std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = shuffle_key(a);
        const auto kb = shuffle_key(b);
        return ka != kb ? ka < kb : ids[a] < ids[b];
      });
      TieGroup tie{keys[group.front()], {}};
      for (std::size_t g : group) tie.items.push_back(ids[g]);
      result.tie_breaks.push_back(std::move(tie));
    }
    result.order.insert(result.order.end(), group.begin(), group.end());
    start = end;
  }
  return result;
}

RankingResult rank_by_expected_rank(std::vector<RankDensity> densities, std::uint64_t seed) {
  std::vector<ItemId> ids;
  std::vector<double> keys;
  ids.reserve(densities.size());
  keys.reserve(densities.size());
  for (const auto& d : densities) {
    ids.push_back(d.item);
    keys.push_back(d.expected_rank);
  }
  TieBrokenOrder sorted = tie_broken_order(ids, keys, /*descending=*/false, seed);
  RankingResult result;
  result.tie_breaks = std::move(sorted.tie_breaks);
  for (std::size_t i : sorted.order) {
    result.order.push_back(ids[i]);
    result.densities.push_back(std::move(densities[i]));
  }
  return result;
}

RankingResult overall_ranking(const BcjModel& m, std::uint64_t seed) {
  return rank_by_expected_rank(rank_densities_exact(m), seed);
}

std::vector<double> cumulative(std::span<const double> probabilities) {
  std::vector<double> cdf(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
  return cdf;
}

RankDensity combine_criteria(std::span<const RankDensity> densities, std::span<const double> weights) {
  if (densities.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no densities to combine");
  }
  if (densities.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "one weight per criterion density is required");
  }
  try {
    validate_weights(std::vector<double>(weights.begin(), weights.end()), densities.size());
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }
  const std::size_t n = densities.front().probabilities.size();
  for (const auto& d : densities) {
    if (d.probabilities.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "densities cover different numbers of ranks");
    }
  }
  // F(r) = sum_l w_l F_l(r). Its first difference is sum_l w_l pmf_l(r) by
  // linearity; summing pmfs directly avoids cancellation in F(r) - F(r-1).
  RankDensity combined{densities.front().item, std::vector<double>(n, 0.0), 0.0};
  for (std::size_t l = 0; l < densities.size(); ++l) {
    if (weights[l] == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      combined.probabilities[r] += weights[l] * densities[l].probabilities[r];
    }
  }
  combined.expected_rank = expected_rank(combined.probabilities);
  return combined;
}

namespace {

std::vector<RankDensity> item_criterion_densities(const std::vector<std::vector<RankDensity>>& per_criterion,
                                                  std::size_t item) {
  std::vector<RankDensity> out;
  out.reserve(per_criterion.size());
  for (const auto& c : per_criterion) out.push_back(c[item]);
  return out;
}

std::vector<std::vector<RankDensity>> all_criterion_densities(const McbjModel& mm) {
  std::vector<std::vector<RankDensity>> per_criterion;
  per_criterion.reserve(mm.criteria_count());
  for (std::size_t l = 0; l < mm.criteria_count(); ++l) {
    per_criterion.push_back(rank_densities_exact(mm.model(l)));
  }
  return per_criterion;
}

}  // namespace

RankingResult overall_ranking(const McbjModel& mm, std::uint64_t seed) {
  const auto per_criterion = all_criterion_densities(mm);
  std::vector<RankDensity> combined;
  combined.reserve(mm.size());
  for (std::size_t i = 0; i < mm.size(); ++i) {
    combined.push_back(combine_criteria(item_criterion_densities(per_criterion, i), mm.weights()));
  }
  return rank_by_expected_rank(std::move(combined), seed);
}

RadarSummary radar_summary(const McbjModel& mm, std::size_t item) {
  if (item >= mm.size()) {
    throw Error(ErrorCode::UnknownItem, "item index out of range: " + std::to_string(item));
  }
  std::vector<RankDensity> densities;
  densities.reserve(mm.criteria_count());
  RadarSummary summary{mm.items()[item], {}, 0.0};
  for (std::size_t l = 0; l < mm.criteria_count(); ++l) {
    densities.push_back(rank_density_exact(mm.model(l), item));
    summary.per_criterion.push_back(densities.back().expected_rank);
  }
  summary.combined = combine_criteria(densities, mm.weights()).expected_rank;
  return summary;
}

RadarSummary radar_summary(const McbjModel& mm, std::string_view item) {
  return radar_summary(mm, mm.model(0).index_of(item));
}

}  // namespace bcj
