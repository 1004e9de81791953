#include <doctest.h>

#include <cmath>

#include "bcj/btm.hpp"
#include "bcj/rng.hpp"
#include "oracles.hpp"

using namespace bcj;

namespace {

std::vector<Comparison> from_counts(const double counts[3][3]) {
  std::vector<Comparison> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (int k = 0; k < static_cast<int>(counts[i][j]); ++k) out.push_back({i, j});
    }
  }
  return out;
}

double win_prob(const BtmScores& s, std::size_t i, std::size_t j) {
  return s.strengths[i] / (s.strengths[i] + s.strengths[j]);
}

}  // namespace

TEST_CASE("two items, two wins out of three") {
  const std::vector<Comparison> games{{0, 1}, {0, 1}, {1, 0}};
  const BtmScores s = btm_fit(games, 2);
  CHECK(s.converged);
  CHECK(std::abs(win_prob(s, 0, 1) - 2.0 / 3.0) < 1e-9);
  const std::vector<ItemId> ids{"a", "b"};
  CHECK(btm_ranking(s, ids, 1).order == std::vector<std::size_t>{0, 1});
}

TEST_CASE("symmetric round robin gives equal strengths") {
  std::vector<Comparison> games;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) games.push_back({i, j});
    }
  }
  const BtmScores s = btm_fit(games, 4);
  for (double p : s.strengths) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("three-item cycle gives equal strengths") {
  const std::vector<Comparison> games{{0, 1}, {1, 2}, {2, 0}};
  const BtmScores s = btm_fit(games, 3);
  for (double p : s.strengths) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const double counts[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  const auto grid = oracle::btm_grid_search_3(counts);
  for (double g : grid) CHECK(std::abs(g - 0.5) < 1e-3);
}

TEST_CASE("disconnected comparison graphs are reported") {
  const std::vector<Comparison> one_sided{{0, 1}, {0, 1}};
  try {
    btm_fit(one_sided, 2);
    FAIL("expected DisconnectedGraphError");
  } catch (const DisconnectedGraphError& e) {
    CHECK(e.code() == ErrorCode::DisconnectedGraph);
    CHECK(e.components().size() == 2);
  }
  const std::vector<Comparison> isolated{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(btm_fit(isolated, 3), DisconnectedGraphError);
  CHECK_THROWS_AS(btm_fit(isolated, 2, 0.0), Error);
  const std::vector<Comparison> bad_index{{0, 5}};
  CHECK_THROWS_AS(btm_fit(bad_index, 2), Error);
}

TEST_CASE("log-likelihood never decreases across MM steps") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.uniform_index(6);
    std::vector<Comparison> games;
    // A cycle through every item guarantees strong connectivity.
    for (std::size_t i = 0; i < n; ++i) games.push_back({i, (i + 1) % n});
    const std::size_t extra = rng.uniform_index(6 * n);
    for (std::size_t k = 0; k < extra; ++k) {
      const std::size_t i = rng.uniform_index(n);
      std::size_t j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
      games.push_back(rng.bernoulli(0.7) ? Comparison{std::min(i, j), std::max(i, j)} : Comparison{i, j});
    }
    const BtmScores s = btm_fit(games, n, 1e-12, 5000);
    for (std::size_t k = 1; k < s.log_likelihood_trace.size(); ++k) {
      CHECK(s.log_likelihood_trace[k] >= s.log_likelihood_trace[k - 1] - 1e-12);
    }
    double total = 0.0;
    for (double p : s.strengths) {
      CHECK(p > 0.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("iteration cap is flagged, not thrown") {
  const std::vector<Comparison> games{{0, 1}, {0, 1}, {1, 0}, {1, 2}, {2, 0}, {0, 2}};
  const BtmScores s = btm_fit(games, 3, 1e-15, 1);
  CHECK_FALSE(s.converged);
  CHECK(s.iterations == 1);
  CHECK(s.log_likelihood_trace.size() == 2);
}

TEST_CASE("MM fit agrees with grid search on sampled three-item instances") {
  Rng rng(99);
  int checked = 0;
  while (checked < 150) {
    double counts[3][3] = {};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        const std::size_t total = rng.uniform_index(6);
        const std::size_t wins = total ? rng.uniform_index(total + 1) : 0;
        counts[i][j] = static_cast<double>(wins);
        counts[j][i] = static_cast<double>(total - wins);
      }
    }
    const auto games = from_counts(counts);
    if (win_graph_components(games, 3).size() != 1) continue;
    const BtmScores s = btm_fit(games, 3);
    const auto grid = oracle::btm_grid_search_3(counts);
    CHECK(std::abs(win_prob(s, 0, 1) - grid[0]) < 1e-3);
    CHECK(std::abs(win_prob(s, 0, 2) - grid[1]) < 1e-3);
    CHECK(std::abs(win_prob(s, 1, 2) - grid[2]) < 1e-3);
    ++checked;
  }
}

TEST_CASE("btm ranking") {
  BtmScores s;
  s.strengths = {0.5, 0.3, 0.2};
  const std::vector<ItemId> ids{"item1", "item2", "item3"};
  CHECK(btm_ranking(s, ids, 0).order == std::vector<std::size_t>{0, 1, 2});
  CHECK(btm_ranking(s, ids, 0).tie_breaks.empty());

  s.strengths = {0.25, 0.25, 0.25, 0.25};
  const std::vector<ItemId> four{"a", "b", "c", "d"};
  const TieBrokenOrder tied = btm_ranking(s, four, 7);
  REQUIRE(tied.tie_breaks.size() == 1);
  CHECK(tied.tie_breaks[0].items.size() == 4);
  CHECK(btm_ranking(s, four, 7).order == tied.order);
  CHECK_THROWS_AS(btm_ranking(s, ids, 0), Error);
}
