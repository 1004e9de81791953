#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "bcj/model.hpp"
#include "bcj/posterior.hpp"
#include "bcj/rng.hpp"
#include "bcj/selection.hpp"
#include "bcj/session.hpp"

namespace bcj {

/// Stand-in assessor that answers from a known ordering (best first),
/// flipping each answer independently with probability `noise`.
class SyntheticJudge {
 public:
  /// One shared ground truth.
  SyntheticJudge(std::vector<ItemId> truth, double noise);
  /// One ground truth per criterion (all permutations of the same items).
  SyntheticJudge(std::vector<std::vector<ItemId>> per_criterion_truth, double noise);

  /// Winner of (a, b) under criterion `criterion`; draws from `rng` only
  /// when noise > 0.
  const ItemId& decide(const ItemId& a, const ItemId& b, std::size_t criterion, Rng& rng) const;

  double noise() const { return noise_; }
  const std::vector<ItemId>& truth(std::size_t criterion = 0) const;

 private:
  std::vector<std::vector<ItemId>> truths_;
  std::vector<std::map<ItemId, std::size_t>> position_;
  double noise_;
};

struct SimulationConfig {
  Mode mode = Mode::Bcj;
  std::size_t items = 10;
  std::size_t criteria = 1;  // MBCJ only
  StrategyKind strategy = StrategyKind::Entropy;
  double noise = 0.0;
  std::size_t budget = 100;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  /// Random adjacent swaps applied to the shared truth per criterion (MBCJ).
  std::size_t criterion_swaps = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws bcj::Error(InvalidConfig).
  void validate() const;
};

/// Tau against the ground truth after every judgement.
struct TauCurve {
  double initial_tau = 0.0;  // before any comparison
  std::vector<std::size_t> comparisons;
  std::vector<double> tau;
};

struct TauPoint {
  std::size_t comparisons = 0;
  double mean = 0.0;
  double sd = 0.0;
};

struct SimulationResult {
  std::vector<TauCurve> runs;
  double initial_mean = 0.0;
  std::vector<TauPoint> curve;  // mean and sample sd over runs
};

/// Ground truth, session config and judge for one repeat. Exposed so
/// paired comparisons between strategies can share instances.
struct SimulationInstance {
  SessionConfig session;
  std::vector<ItemId> truth;  // target ordering for tau
  SyntheticJudge judge;
  std::uint64_t judge_seed = 0;
};
SimulationInstance make_instance(const SimulationConfig& config, std::size_t repeat);

TauCurve run_instance(const SimulationInstance& instance);

/// Runs `repeats` headless sessions; repeat r uses seeds derived from
/// (seed, r) so results do not depend on thread scheduling.
SimulationResult simulate(const SimulationConfig& config);

}  // namespace bcj
