#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "bcj/csv_export.hpp"
#include "bcj/errors.hpp"
#include "bcj/split.hpp"
#include "session_helpers.hpp"

using namespace bcj;
namespace fs = std::filesystem;

namespace {

std::vector<MarkedItem> marked(std::initializer_list<double> marks) {
  std::vector<MarkedItem> out;
  int k = 0;
  for (double m : marks) out.push_back({"s" + std::to_string(++k), m});
  return out;
}

std::vector<double> marks_of(const std::vector<MarkedItem>& group) {
  std::vector<double> out;
  for (const auto& m : group) out.push_back(m.mark);
  return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

struct TempDir {
  fs::path path = fs::temp_directory_path() /
                  ("bcj_export_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("stratified split deals sorted marks round robin") {
  const auto groups = stratified_split(marked({3, 6, 1, 5, 2, 4}), 2, 0);
  REQUIRE(groups.size() == 2);
  CHECK(marks_of(groups[0]) == std::vector<double>{6, 4, 2});
  CHECK(marks_of(groups[1]) == std::vector<double>{5, 3, 1});

  std::vector<MarkedItem> thirty;
  for (int k = 0; k < 30; ++k) thirty.push_back({"s" + std::to_string(k), static_cast<double>(k % 7)});
  for (const auto& g : stratified_split(thirty, 3, 4)) CHECK(g.size() == 10);

  const auto one = stratified_split(marked({2, 9, 4}), 1, 0);
  REQUIRE(one.size() == 1);
  CHECK(marks_of(one[0]) == std::vector<double>{9, 4, 2});
}

TEST_CASE("stratified split is a balanced partition") {
  Rng rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.uniform_index(40);
    const std::size_t g = 1 + rng.uniform_index(n);
    std::vector<MarkedItem> items;
    for (std::size_t k = 0; k < n; ++k) items.push_back({"s" + std::to_string(k), static_cast<double>(rng.uniform_index(5))});
    const auto groups = stratified_split(items, g, rng.next());
    REQUIRE(groups.size() == g);
    std::multiset<std::string> seen;
    std::size_t smallest = n, largest = 0;
    for (const auto& group : groups) {
      smallest = std::min(smallest, group.size());
      largest = std::max(largest, group.size());
      for (const auto& m : group) seen.insert(m.id);
      // Marks within a group stay in descending order.
      for (std::size_t k = 1; k < group.size(); ++k) CHECK(group[k - 1].mark >= group[k].mark);
    }
    CHECK(largest - smallest <= 1);
    CHECK(seen.size() == n);
    CHECK(std::set<std::string>(seen.begin(), seen.end()).size() == n);
  }
}

TEST_CASE("stratified split shuffles ties with the seed only") {
  std::vector<MarkedItem> ties;
  for (int k = 0; k < 12; ++k) ties.push_back({"t" + std::to_string(k), 1.0});
  const auto a = stratified_split(ties, 3, 1);
  const auto b = stratified_split(ties, 3, 1);
  std::vector<MarkedItem> reversed(ties.rbegin(), ties.rend());
  const auto c = stratified_split(reversed, 3, 1);
  bool differs = false;
  for (std::uint64_t seed = 2; seed < 10 && !differs; ++seed) {
    const auto d = stratified_split(ties, 3, seed);
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t k = 0; k < 4; ++k) differs |= d[g][k].id != a[g][k].id;
    }
  }
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(a[g][k].id == b[g][k].id);
      CHECK(a[g][k].id == c[g][k].id);
    }
  }
  CHECK(differs);
}

TEST_CASE("stratified split errors") {
  CHECK_THROWS_AS(stratified_split(marked({1, 2}), 0, 0), Error);
  CHECK_THROWS_AS(stratified_split(marked({1, 2}), 3, 0), Error);
  auto dup = marked({1, 2});
  dup[1].id = dup[0].id;
  CHECK_THROWS_AS(stratified_split(dup, 1, 0), Error);
}

TEST_CASE("marks CSV") {
  std::istringstream ok("id,mark\r\nann,71.5\nbob,64\n\n");
  const auto items = read_marks_csv(ok);
  REQUIRE(items.size() == 2);
  CHECK(items[0].id == "ann");
  CHECK(items[0].mark == 71.5);
  CHECK(items[1].mark == 64.0);

  std::istringstream no_header("ann,71\n");
  CHECK_THROWS_AS(read_marks_csv(no_header), Error);
  std::istringstream bad_mark("id,mark\nann,seventy\n");
  CHECK_THROWS_AS(read_marks_csv(bad_mark), Error);
  std::istringstream trailing("id,mark\nann,70x\n");
  CHECK_THROWS_AS(read_marks_csv(trailing), Error);
  std::istringstream no_comma("id,mark\nann\n");
  CHECK_THROWS_AS(read_marks_csv(no_comma), Error);
}

TEST_CASE("session export of a fresh session") {
  TempDir dir;
  Session s(bcj::testing::bcj_config(4));
  const auto files = export_session(s, dir.path);
  for (const auto& f : files) CHECK(fs::exists(f));

  const auto densities = read_csv(dir.path / "rank_densities.csv");
  REQUIRE(densities.size() == 5);
  CHECK(densities[0] == std::vector<std::string>{"item", "rank_1", "rank_2", "rank_3", "rank_4"});
  // Wins against three coin-flip opponents are Binomial(3, 1/2).
  const std::vector<std::string> binomial{"0.125000", "0.375000", "0.375000", "0.125000"};
  for (std::size_t r = 1; r < 5; ++r) CHECK(std::vector<std::string>(densities[r].begin() + 1, densities[r].end()) == binomial);

  const auto heat = read_csv(dir.path / "map_holistic.csv");
  REQUIRE(heat.size() == 5);
  for (std::size_t i = 1; i < 5; ++i) {
    REQUIRE(heat[i].size() == 5);
    for (std::size_t j = 1; j < 5; ++j) CHECK(heat[i][j] == (j > i ? "0.000000" : ""));
  }
  const auto pdfs = read_csv(dir.path / "beta_pdfs.csv");
  CHECK(pdfs.size() == 1);
}

TEST_CASE("session export after judging") {
  TempDir dir;
  Session s(bcj::testing::mbcj_config(5, 2, 3));
  Rng rng(6);
  bcj::testing::drive_randomly(s, 9, 2, rng);
  export_session(s, dir.path);

  for (const std::string name : {"rank_densities.csv", "rank_densities_lo1.csv", "rank_densities_lo2.csv"}) {
    const auto rows = read_csv(dir.path / name);
    REQUIRE(rows.size() == 6);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      double sum = 0.0;
      for (std::size_t c = 1; c < rows[r].size(); ++c) sum += std::stod(rows[r][c]);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-5));
    }
  }
  const auto expected = read_csv(dir.path / "expected_ranks.csv");
  CHECK(expected[0] == std::vector<std::string>{"item", "lo1", "lo2", "combined"});
  for (const std::string name : {"map_lo1.csv", "eap_lo2.csv", "map_holistic.csv", "eap_holistic.csv"}) {
    CHECK(fs::exists(dir.path / name));
  }

  std::set<std::pair<std::string, std::string>> judged;
  for (const auto& j : s.audit_log()) judged.insert(std::minmax(j.left, j.right));
  const auto pdfs = read_csv(dir.path / "beta_pdfs.csv");
  CHECK(pdfs.size() == 1 + 2 * judged.size() * 101);
}

TEST_CASE("tau CSVs") {
  TempDir dir;
  fs::create_directories(dir.path);
  SimulationConfig cfg;
  cfg.items = 6;
  cfg.budget = 12;
  cfg.repeats = 3;
  const SimulationResult result = simulate(cfg);
  write_tau_curve_csv(dir.path / "curve.csv", result.runs[0]);
  write_tau_summary_csv(dir.path / "summary.csv", result.curve);
  const auto curve = read_csv(dir.path / "curve.csv");
  CHECK(curve.size() == 1 + 12);
  CHECK(curve[0] == std::vector<std::string>{"comparisons", "tau"});
  CHECK(curve[12][0] == "12");
  const auto summary = read_csv(dir.path / "summary.csv");
  CHECK(summary.size() == 1 + 12);
  CHECK(summary[0] == std::vector<std::string>{"comparisons", "mean_tau", "sd_tau"});
}

TEST_CASE("export failures name the file") {
  TempDir dir;
  fs::create_directories(dir.path);
  std::ofstream(dir.path / "blocker") << "x";
  Session s(bcj::testing::bcj_config(3));
  try {
    export_session(s, dir.path / "blocker" / "inner");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(std::string(e.what()).find("blocker") != std::string::npos);
  }
}
