#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "bcj/errors.hpp"
#include "bcj/selection.hpp"

using namespace bcj;

namespace {

std::vector<ItemId> make_ids(std::size_t n) {
  std::vector<ItemId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("i" + std::to_string(i));
  return ids;
}

std::size_t pair_of(const BcjModel& m, const PresentedPair& p) { return m.pair_index(p.left, p.right); }

}  // namespace

TEST_CASE("random selection: single option for two items") {
  BcjModel m({"a", "b"});
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const PresentedPair p = next_pair_random(m, rng);
    CHECK(p.left != p.right);
    CHECK(pair_of(m, p) == 0);
  }
}

TEST_CASE("random selection is uniform over pairs and sides") {
  BcjModel m(make_ids(10));
  Rng rng(2024);
  const int draws = 100000;
  std::vector<int> counts(m.pair_count(), 0);
  int left_is_lower = 0;
  for (int k = 0; k < draws; ++k) {
    const PresentedPair p = next_pair_random(m, rng);
    ++counts[pair_of(m, p)];
    left_is_lower += p.left < p.right ? 1 : 0;
  }
  const double p = 1.0 / 45.0;
  const double mean = draws * p;
  const double sigma = std::sqrt(draws * p * (1.0 - p));
  for (int c : counts) CHECK(std::abs(c - mean) <= 5.0 * sigma);
  CHECK(std::abs(left_is_lower - draws / 2.0) <= 5.0 * std::sqrt(draws * 0.25));
}

TEST_CASE("selection is reproducible for a fixed seed") {
  BcjModel m(make_ids(8));
  Rng a(77), b(77);
  for (int k = 0; k < 100; ++k) {
    CHECK(next_pair_random(m, a) == next_pair_random(m, b));
    CHECK(next_pair_entropy(m, a) == next_pair_entropy(m, b));
  }
}

TEST_CASE("entropy selection on a flat model ties across every pair") {
  BcjModel m(make_ids(5));
  std::set<std::size_t> seen;
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) seen.insert(pair_of(m, next_pair_entropy(m, rng)));
  CHECK(seen.size() == m.pair_count());
}

TEST_CASE("entropy selection avoids a judged pair while others are untouched") {
  BcjModel m(make_ids(4));
  m.record(0, 1);
  CHECK(beta_entropy(m.canonical(m.pair_index(0, 1))) == doctest::Approx(-0.1931471805599453));
  Rng rng(5);
  for (int k = 0; k < 500; ++k) CHECK(pair_of(m, next_pair_entropy(m, rng)) != m.pair_index(0, 1));
}

TEST_CASE("entropy selection prefers the contested pair") {
  BcjModel m(make_ids(4));
  // Every pair gets at least six decisive judgements except the two below.
  for (std::size_t k = 0; k < m.pair_count(); ++k) {
    const auto [i, j] = m.pair_at(k);
    for (int c = 0; c < 7; ++c) m.record(i, j);
  }
  BcjModel contested(make_ids(4));
  for (std::size_t k = 0; k < m.pair_count(); ++k) {
    const auto [i, j] = m.pair_at(k);
    if (k == 0) {
      for (int c = 0; c < 2; ++c) { contested.record(i, j); contested.record(j, i); }  // Beta(3,3)
    } else if (k == 1) {
      for (int c = 0; c < 4; ++c) contested.record(i, j);  // Beta(5,1)
    } else {
      for (int c = 0; c < 7; ++c) contested.record(i, j);  // Beta(8,1)
    }
  }
  CHECK(beta_entropy(contested.canonical(0)) == doctest::Approx(-0.26786404832882216));
  CHECK(beta_entropy(contested.canonical(1)) == doctest::Approx(-0.8094379124340998));
  Rng rng(6);
  for (int k = 0; k < 50; ++k) CHECK(pair_of(contested, next_pair_entropy(contested, rng)) == 0);
}

TEST_CASE("entropy selection never picks a pair below the maximum") {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(9);
    BcjModel m(make_ids(n));
    const std::size_t judgements = rng.uniform_index(4 * n * n);
    for (std::size_t k = 0; k < judgements; ++k) {
      const std::size_t i = rng.uniform_index(n);
      std::size_t j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
      m.record(i, j);
    }
    double best = -INFINITY;
    for (std::size_t k = 0; k < m.pair_count(); ++k) best = std::max(best, beta_entropy(m.canonical(k)));
    const PresentedPair p = next_pair_entropy(m, rng);
    CHECK(beta_entropy(m.canonical(pair_of(m, p))) == best);
  }
}

TEST_CASE("combined entropy selection") {
  Rng seed_a(9), seed_b(9);
  McbjModel single(make_ids(6), {"lo1"});
  single.record(0, 0, 1);
  single.record(0, 2, 3);
  for (int k = 0; k < 50; ++k) {
    CHECK(next_pair_combined_entropy(single, seed_a) == next_pair_entropy(single.model(0), seed_b));
  }

  McbjModel mm(make_ids(3), {"lo1", "lo2", "lo3"});
  // Pairs (0,1) and (0,2) judged on every criterion, (1,2) untouched.
  for (std::size_t l = 0; l < 3; ++l) {
    mm.record(l, 0, 1);
    mm.record(l, 2, 0);
  }
  CHECK(combined_entropy(mm, mm.model(0).pair_index(1, 2), false) == 0.0);
  CHECK(combined_entropy(mm, mm.model(0).pair_index(0, 1), false) < 0.0);
  Rng rng(10);
  for (int k = 0; k < 50; ++k) {
    const PresentedPair p = next_pair_combined_entropy(mm, rng);
    CHECK(mm.model(0).pair_index(p.left, p.right) == mm.model(0).pair_index(1, 2));
  }

  McbjModel flat(make_ids(5), {"a", "b"});
  std::set<std::size_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const PresentedPair p = next_pair_combined_entropy(flat, rng);
    seen.insert(flat.model(0).pair_index(p.left, p.right));
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("combined entropy with identical criteria orders pairs like single-criterion entropy") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.uniform_index(6);
    McbjModel mm(make_ids(n), {"a", "b", "c"});
    const std::size_t judgements = rng.uniform_index(5 * n);
    for (std::size_t k = 0; k < judgements; ++k) {
      const std::size_t i = rng.uniform_index(n);
      std::size_t j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
      for (std::size_t l = 0; l < 3; ++l) mm.record(l, i, j);
    }
    const BcjModel& m = mm.model(0);
    for (std::size_t a = 0; a < m.pair_count(); ++a) {
      for (std::size_t b = 0; b < m.pair_count(); ++b) {
        const double ha = beta_entropy(m.canonical(a));
        const double hb = beta_entropy(m.canonical(b));
        if (ha == hb) continue;
        CHECK((ha < hb) == (combined_entropy(mm, a, false) < combined_entropy(mm, b, false)));
      }
    }
  }
}

TEST_CASE("weighted combined entropy scales by criterion weight") {
  McbjModel mm(make_ids(3), {"a", "b"}, {0.25, 0.75});
  mm.record(0, 0, 1);
  mm.record(1, 0, 1);
  mm.record(1, 0, 1);
  const std::size_t k = mm.model(0).pair_index(0, 1);
  const double h0 = beta_entropy(PairPosterior(2, 1));
  const double h1 = beta_entropy(PairPosterior(3, 1));
  CHECK(combined_entropy(mm, k, false) == doctest::Approx(h0 + h1));
  CHECK(combined_entropy(mm, k, true) == doctest::Approx(0.25 * h0 + 0.75 * h1));
}

TEST_CASE("budget") {
  Budget b(default_budget(10));
  CHECK(budget_remaining(b) == 100);
  b.consume();
  CHECK(budget_remaining(b) == 99);
  Budget tiny(2);
  tiny.consume();
  tiny.consume();
  CHECK(budget_remaining(tiny) == 0);
  CHECK(tiny.exhausted());
  CHECK_THROWS_AS(tiny.consume(), Error);
  CHECK_THROWS_AS(Budget(0), Error);
}

TEST_CASE("strategy names") {
  CHECK(strategy_from_string("random") == StrategyKind::Random);
  CHECK(strategy_from_string(to_string(StrategyKind::CombinedEntropy)) == StrategyKind::CombinedEntropy);
  CHECK_THROWS_AS(strategy_from_string("greedy"), Error);
}
