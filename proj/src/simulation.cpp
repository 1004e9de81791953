#include "bcj/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "bcj/errors.hpp"
#include "bcj/metrics.hpp"

namespace bcj {

SyntheticJudge::SyntheticJudge(std::vector<ItemId> truth, double noise)
    : SyntheticJudge(std::vector<std::vector<ItemId>>{std::move(truth)}, noise) {}

SyntheticJudge::SyntheticJudge(std::vector<std::vector<ItemId>> per_criterion_truth, double noise)
    : truths_(std::move(per_criterion_truth)), noise_(noise) {
  if (truths_.empty()) throw Error(ErrorCode::InvalidConfig, "a synthetic judge needs a ground truth");
  if (!(noise_ >= 0.0 && noise_ <= 0.5)) {
    throw Error(ErrorCode::InvalidConfig, "judge noise must lie in [0, 0.5]");
  }
  for (const auto& truth : truths_) {
    std::map<ItemId, std::size_t> pos;
    for (std::size_t i = 0; i < truth.size(); ++i) pos[truth[i]] = i;
    const bool same_items =
        position_.empty() ||
        std::equal(pos.begin(), pos.end(), position_.front().begin(), position_.front().end(),
                   [](const auto& x, const auto& y) { return x.first == y.first; });
    if (pos.size() != truth.size() || truth.size() != truths_.front().size() || !same_items) {
      throw Error(ErrorCode::InvalidConfig, "ground truths must be permutations of one item set");
    }
    position_.push_back(std::move(pos));
  }
}

const std::vector<ItemId>& SyntheticJudge::truth(std::size_t criterion) const {
  return truths_.size() == 1 ? truths_.front() : truths_.at(criterion);
}

const ItemId& SyntheticJudge::decide(const ItemId& a, const ItemId& b, std::size_t criterion, Rng& rng) const {
  const auto& pos = truths_.size() == 1 ? position_.front() : position_.at(criterion);
  const bool a_better = pos.at(a) < pos.at(b);
  const bool flip = noise_ > 0.0 && rng.bernoulli(noise_);
  return (a_better != flip) ? a : b;
}

void SimulationConfig::validate() const {
  if (items < 2) throw Error(ErrorCode::InvalidConfig, "simulation needs at least two items");
  if (mode == Mode::Mbcj && criteria < 1) {
    throw Error(ErrorCode::InvalidConfig, "MBCJ simulation needs at least one criterion");
  }
  if (mode == Mode::Bcj && strategy == StrategyKind::CombinedEntropy) {
    throw Error(ErrorCode::InvalidConfig, "combined entropy selection needs MBCJ mode");
  }
  if (budget < 1) throw Error(ErrorCode::InvalidConfig, "budget must be positive");
  if (repeats < 1) throw Error(ErrorCode::InvalidConfig, "repeats must be positive");
  if (!(noise >= 0.0 && noise <= 0.5)) throw Error(ErrorCode::InvalidConfig, "noise must lie in [0, 0.5]");
}

SimulationInstance make_instance(const SimulationConfig& config, std::size_t repeat) {
  config.validate();
  const std::uint64_t run_seed = derive_seed(config.seed, repeat);
  const int width = static_cast<int>(std::to_string(config.items).size());

  SessionConfig session;
  session.mode = config.mode;
  for (std::size_t i = 1; i <= config.items; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "item%0*zu", width, i);
    session.items.push_back({id, "", ""});
  }
  if (config.mode == Mode::Mbcj) {
    for (std::size_t l = 1; l <= config.criteria; ++l) {
      session.criteria.push_back({"lo" + std::to_string(l), "Learning outcome " + std::to_string(l)});
    }
  }
  session.strategy.kind = config.strategy;
  session.budget = config.budget;
  session.seed = derive_seed(run_seed, 3);

  std::vector<ItemId> truth = session.item_ids();
  Rng truth_rng(derive_seed(run_seed, 1));
  truth_rng.shuffle(truth);

  std::vector<std::vector<ItemId>> per_criterion{truth};
  if (config.mode == Mode::Mbcj) {
    per_criterion.assign(config.criteria, truth);
    Rng swap_rng(derive_seed(run_seed, 2));
    for (auto& t : per_criterion) {
      for (std::size_t s = 0; s < config.criterion_swaps; ++s) {
        const std::size_t k = swap_rng.uniform_index(t.size() - 1);
        std::swap(t[k], t[k + 1]);
      }
    }
  }
  return SimulationInstance{std::move(session), std::move(truth),
                            SyntheticJudge(std::move(per_criterion), config.noise),
                            derive_seed(run_seed, 4)};
}

TauCurve run_instance(const SimulationInstance& instance) {
  static const std::string kJudge = "synthetic";
  Session session(instance.session);
  Rng judge_rng(instance.judge_seed);
  const auto criteria = instance.session.criterion_ids();

  TauCurve curve;
  curve.initial_tau = kendall_tau_distance(session.ranking().order, instance.truth).normalised;
  for (;;) {
    const NextPair next = session.next_pair(kJudge);
    if (next.exhausted) break;
    Submission s{kJudge, next.left, next.right, {}, std::string("1970-01-01T00:00:00.000Z")};
    for (std::size_t l = 0; l < criteria.size(); ++l) {
      s.decisions[criteria[l]] = instance.judge.decide(next.left, next.right, l, judge_rng);
    }
    session.submit(s);
    curve.comparisons.push_back(session.budget().used());
    curve.tau.push_back(kendall_tau_distance(session.ranking().order, instance.truth).normalised);
  }
  return curve;
}

SimulationResult simulate(const SimulationConfig& config) {
  config.validate();
  SimulationResult result;
  result.runs.resize(config.repeats);

  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.repeats);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < config.repeats; r = next++) {
      result.runs[r] = run_instance(make_instance(config, r));
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  const double runs = static_cast<double>(config.repeats);
  for (const auto& run : result.runs) result.initial_mean += run.initial_tau / runs;

  std::size_t longest = 0;
  for (const auto& run : result.runs) longest = std::max(longest, run.tau.size());
  for (std::size_t k = 0; k < longest; ++k) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& run : result.runs) {
      if (k < run.tau.size()) {
        sum += run.tau[k];
        ++count;
      }
    }
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (const auto& run : result.runs) {
      if (k < run.tau.size()) ss += (run.tau[k] - mean) * (run.tau[k] - mean);
    }
    const double sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
    result.curve.push_back({k + 1, mean, sd});
  }
  return result;
}

}  // namespace bcj
