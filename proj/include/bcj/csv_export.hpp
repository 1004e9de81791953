#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bcj/metrics.hpp"
#include "bcj/ranking.hpp"
#include "bcj/session.hpp"
#include "bcj/simulation.hpp"

namespace bcj {

// CSV writers. Numeric cells carry six decimals; I/O failures raise
// bcj::Error(Io) naming the file.

/// Header `item,rank_1,...,rank_N`; one row per density.
void write_rank_densities_csv(const std::filesystem::path& path, std::span<const RankDensity> densities);

/// Header `item,<criterion...>,combined`; rows in ranking order.
void write_expected_ranks_csv(const std::filesystem::path& path, const std::vector<std::string>& criteria,
                              const std::vector<RadarSummary>& rows);

/// Header `item,<item ids...>`; cells on and below the diagonal are empty.
void write_heatmap_csv(const std::filesystem::path& path, const AgreementMatrix& matrix, bool use_map);

/// Header `comparisons,tau`.
void write_tau_curve_csv(const std::filesystem::path& path, const TauCurve& curve);

/// Header `comparisons,mean_tau,sd_tau`.
void write_tau_summary_csv(const std::filesystem::path& path, std::span<const TauPoint> points);

/// Header `criterion,first,second,alpha,beta,x,pdf`; judged pairs only.
void write_beta_pdfs_csv(const std::filesystem::path& path, const McbjModel& models, std::size_t grid_points = 101);

/// Writes every artefact of a session into `dir`; returns the file paths.
std::vector<std::filesystem::path> export_session(const Session& session, const std::filesystem::path& dir);

}  // namespace bcj
