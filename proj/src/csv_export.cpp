#include "bcj/csv_export.hpp"

#include <cstdio>
#include <fstream>

#include "bcj/errors.hpp"

namespace bcj {

namespace fs = std::filesystem;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

class CsvFile {
 public:
  explicit CsvFile(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  }

  std::ostream& stream() { return out_; }

  void close() {
    out_.close();
    if (!out_) throw Error(ErrorCode::Io, "failed writing " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

}  // namespace

void write_rank_densities_csv(const fs::path& path, std::span<const RankDensity> densities) {
  CsvFile f(path);
  auto& os = f.stream();
  const std::size_t n = densities.empty() ? 0 : densities.front().probabilities.size();
  os << "item";
  for (std::size_t r = 1; r <= n; ++r) os << ",rank_" << r;
  os << '\n';
  for (const auto& d : densities) {
    os << d.item;
    for (double p : d.probabilities) os << ',' << fixed6(p);
    os << '\n';
  }
  f.close();
}

void write_expected_ranks_csv(const fs::path& path, const std::vector<std::string>& criteria,
                              const std::vector<RadarSummary>& rows) {
  CsvFile f(path);
  auto& os = f.stream();
  os << "item";
  for (const auto& c : criteria) os << ',' << c;
  os << ",combined\n";
  for (const auto& row : rows) {
    os << row.item;
    for (double e : row.per_criterion) os << ',' << fixed6(e);
    os << ',' << fixed6(row.combined) << '\n';
  }
  f.close();
}

void write_heatmap_csv(const fs::path& path, const AgreementMatrix& matrix, bool use_map) {
  CsvFile f(path);
  auto& os = f.stream();
  const auto& items = matrix.items();
  os << "item";
  for (const auto& id : items) os << ',' << id;
  os << '\n';
  for (std::size_t i = 0; i < items.size(); ++i) {
    os << items[i];
    for (std::size_t j = 0; j < items.size(); ++j) {
      os << ',';
      if (j > i) os << fixed6(use_map ? matrix.map(i, j) : matrix.eap(i, j));
    }
    os << '\n';
  }
  f.close();
}

void write_tau_curve_csv(const fs::path& path, const TauCurve& curve) {
  CsvFile f(path);
  auto& os = f.stream();
  os << "comparisons,tau\n";
  for (std::size_t k = 0; k < curve.tau.size(); ++k) {
    os << curve.comparisons[k] << ',' << fixed6(curve.tau[k]) << '\n';
  }
  f.close();
}

void write_tau_summary_csv(const fs::path& path, std::span<const TauPoint> points) {
  CsvFile f(path);
  auto& os = f.stream();
  os << "comparisons,mean_tau,sd_tau\n";
  for (const auto& p : points) os << p.comparisons << ',' << fixed6(p.mean) << ',' << fixed6(p.sd) << '\n';
  f.close();
}

void write_beta_pdfs_csv(const fs::path& path, const McbjModel& models, std::size_t grid_points) {
  CsvFile f(path);
  auto& os = f.stream();
  os << "criterion,first,second,alpha,beta,x,pdf\n";
  const auto& ids = models.items();
  for (std::size_t l = 0; l < models.criteria_count(); ++l) {
    const BcjModel& m = models.model(l);
    for (std::size_t k = 0; k < m.pair_count(); ++k) {
      const PairPosterior& p = m.canonical(k);
      if (p.observations() == 0.0) continue;
      const auto [i, j] = m.pair_at(k);
      for (std::size_t g = 0; g < grid_points; ++g) {
        const double x = grid_points > 1 ? static_cast<double>(g) / static_cast<double>(grid_points - 1) : 0.5;
        os << models.criteria()[l] << ',' << ids[i] << ',' << ids[j] << ',' << fixed6(p.alpha) << ','
           << fixed6(p.beta) << ',' << fixed6(x) << ',' << fixed6(beta_pdf(p, x)) << '\n';
      }
    }
  }
  f.close();
}

std::vector<fs::path> export_session(const Session& session, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  const McbjModel& models = session.models();
  const RankingResult ranked = session.ranking();

  written.push_back(dir / "rank_densities.csv");
  write_rank_densities_csv(written.back(), ranked.densities);

  std::vector<RadarSummary> radar;
  for (const auto& id : ranked.order) radar.push_back(radar_summary(models, std::string_view(id)));
  written.push_back(dir / "expected_ranks.csv");
  write_expected_ranks_csv(written.back(), models.criteria(), radar);

  for (std::size_t l = 0; l < models.criteria_count(); ++l) {
    const std::string& c = models.criteria()[l];
    if (session.mode() == Mode::Mbcj) {
      written.push_back(dir / ("rank_densities_" + c + ".csv"));
      write_rank_densities_csv(written.back(), rank_densities_exact(models.model(l)));
    }
    const AgreementMatrix agreement(models.model(l));
    written.push_back(dir / ("map_" + c + ".csv"));
    write_heatmap_csv(written.back(), agreement, true);
    written.push_back(dir / ("eap_" + c + ".csv"));
    write_heatmap_csv(written.back(), agreement, false);
  }
  if (session.mode() == Mode::Mbcj) {
    const AgreementMatrix pooled(pooled_model(models));
    written.push_back(dir / (std::string("map_") + kHolisticCriterion + ".csv"));
    write_heatmap_csv(written.back(), pooled, true);
    written.push_back(dir / (std::string("eap_") + kHolisticCriterion + ".csv"));
    write_heatmap_csv(written.back(), pooled, false);
  }
  written.push_back(dir / "beta_pdfs.csv");
  write_beta_pdfs_csv(written.back(), models);
  return written;
}

}  // namespace bcj
