#include "bcj/metrics.hpp"

#include <cmath>
#include <unordered_map>

#include "bcj/errors.hpp"

namespace bcj {

TauDistance kendall_tau_distance(std::span<const ItemId> a, std::span<const ItemId> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "rankings have different lengths");
  }
  const std::size_t n = a.size();
  std::unordered_map<std::string, std::size_t> position_in_b;
  for (std::size_t i = 0; i < n; ++i) {
    if (!position_in_b.emplace(b[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate id in ranking: " + b[i]);
    }
  }
  std::vector<std::size_t> mapped(n);
  std::unordered_map<std::string, bool> seen;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = position_in_b.find(a[i]);
    if (it == position_in_b.end() || !seen.emplace(a[i], true).second) {
      throw Error(ErrorCode::InvalidArgument, "rankings are not permutations of the same items");
    }
    mapped[i] = it->second;
  }
  TauDistance tau;
  tau.total_pairs = n * (n - 1) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mapped[i] > mapped[j]) ++tau.discordant_pairs;
    }
  }
  tau.normalised = tau.total_pairs == 0 ? 0.0
                                        : static_cast<double>(tau.discordant_pairs) /
                                              static_cast<double>(tau.total_pairs);
  return tau;
}

double expected_agreement(const PairPosterior& p) { return 2.0 * std::abs(posterior_mean(p) - 0.5); }

double mode_agreement(const PairPosterior& p) { return 2.0 * std::abs(posterior_mode(p) - 0.5); }

AgreementMatrix::AgreementMatrix(const BcjModel& m) : items_(m.items()) {
  const std::size_t n = items_.size();
  map_.assign(n * n, 0.0);
  eap_.assign(n * n, 0.0);
  for (std::size_t k = 0; k < m.pair_count(); ++k) {
    const auto [i, j] = m.pair_at(k);
    map_[i * n + j] = mode_agreement(m.canonical(k));
    eap_[i * n + j] = expected_agreement(m.canonical(k));
  }
}

std::size_t AgreementMatrix::index(std::size_t i, std::size_t j) const {
  const std::size_t n = items_.size();
  if (i == j || i >= n || j >= n) {
    throw Error(ErrorCode::InvalidArgument, "agreement is defined for distinct items only");
  }
  return i < j ? i * n + j : j * n + i;
}

std::vector<AgreementMatrix> agreement_heatmaps(const McbjModel& mm) {
  std::vector<AgreementMatrix> out;
  out.reserve(mm.criteria_count());
  for (std::size_t l = 0; l < mm.criteria_count(); ++l) out.emplace_back(mm.model(l));
  return out;
}

BcjModel pooled_model(const McbjModel& mm) {
  BcjModel pooled(mm.items());
  for (std::size_t l = 0; l < mm.criteria_count(); ++l) {
    const BcjModel& m = mm.model(l);
    for (std::size_t k = 0; k < m.pair_count(); ++k) {
      const auto [i, j] = m.pair_at(k);
      const PairPosterior& p = m.canonical(k);
      for (double w = 1.0; w < p.alpha; w += 1.0) pooled.record(i, j);
      for (double w = 1.0; w < p.beta; w += 1.0) pooled.record(j, i);
    }
  }
  return pooled;
}

}  // namespace bcj
