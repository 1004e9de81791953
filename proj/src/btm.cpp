#include "bcj/btm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bcj {

namespace {

std::string describe_components(const std::vector<std::vector<std::size_t>>& components) {
  std::ostringstream os;
  os << "comparison graph is not strongly connected; components:";
  for (const auto& c : components) {
    os << " {";
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
    os << "}";
  }
  return os.str();
}

}  // namespace

DisconnectedGraphError::DisconnectedGraphError(std::vector<std::vector<std::size_t>> components)
    : Error(ErrorCode::DisconnectedGraph, describe_components(components)),
      components_(std::move(components)) {}

std::vector<std::vector<std::size_t>> win_graph_components(std::span<const Comparison> comparisons,
                                                           std::size_t item_count) {
  std::vector<std::vector<std::size_t>> out_edges(item_count);
  for (const auto& c : comparisons) out_edges[c.winner].push_back(c.loser);

  // reach[i][j]: j reachable from i.
  std::vector<std::vector<char>> reach(item_count, std::vector<char>(item_count, 0));
  for (std::size_t s = 0; s < item_count; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : out_edges[u]) {
        if (!reach[s][v]) {
          reach[s][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> components;
  std::vector<char> assigned(item_count, 0);
  for (std::size_t i = 0; i < item_count; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> comp;
    for (std::size_t j = i; j < item_count; ++j) {
      if (!assigned[j] && reach[i][j] && reach[j][i]) {
        comp.push_back(j);
        assigned[j] = 1;
      }
    }
    components.push_back(std::move(comp));
  }
  return components;
}

double btm_log_likelihood(std::span<const Comparison> comparisons, std::span<const double> strengths) {
  double ll = 0.0;
  for (const auto& c : comparisons) {
    const double pw = strengths[c.winner];
    ll += std::log(pw) - std::log(pw + strengths[c.loser]);
  }
  return ll;
}

BtmScores btm_fit(std::span<const Comparison> comparisons, std::size_t item_count, double tolerance,
                  std::size_t max_iterations) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  if (item_count < 2) {
    throw Error(ErrorCode::InvalidArgument, "at least two items are required");
  }
  for (const auto& c : comparisons) {
    if (c.winner >= item_count || c.loser >= item_count || c.winner == c.loser) {
      throw Error(ErrorCode::InvalidArgument, "comparison refers to an invalid item pair");
    }
  }
  auto components = win_graph_components(comparisons, item_count);
  if (components.size() > 1) {
    throw DisconnectedGraphError(std::move(components));
  }

  const std::size_t n = item_count;
  std::vector<double> wins(n, 0.0);
  std::vector<double> games(n * n, 0.0);  // n_ij, symmetric
  for (const auto& c : comparisons) {
    wins[c.winner] += 1.0;
    games[c.winner * n + c.loser] += 1.0;
    games[c.loser * n + c.winner] += 1.0;
  }

  BtmScores result;
  result.strengths.assign(n, 1.0 / static_cast<double>(n));
  result.log_likelihood_trace.push_back(btm_log_likelihood(comparisons, result.strengths));
  std::vector<double> next(n);
  while (result.iterations < max_iterations) {
    const auto& p = result.strengths;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double denom = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && games[i * n + j] > 0.0) denom += games[i * n + j] / (p[i] + p[j]);
      }
      next[i] = wins[i] / denom;
      total += next[i];
    }
    double max_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      max_change = std::max(max_change, std::abs(next[i] - p[i]));
    }
    result.strengths.swap(next);
    ++result.iterations;
    result.log_likelihood_trace.push_back(btm_log_likelihood(comparisons, result.strengths));
    if (max_change < tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

TieBrokenOrder btm_ranking(const BtmScores& scores, std::span<const ItemId> items, std::uint64_t seed) {
  if (items.size() != scores.strengths.size()) {
    throw Error(ErrorCode::InvalidArgument, "one item id per strength is required");
  }
  return tie_broken_order(items, scores.strengths, /*descending=*/true, seed);
}

}  // namespace bcj
