// bcj: batch tooling and HTTP server for comparative judgement sessions.

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "bcj/api.hpp"
#include "bcj/csv_export.hpp"
#include "bcj/errors.hpp"
#include "bcj/session.hpp"
#include "bcj/simulation.hpp"
#include "bcj/split.hpp"
#include "bcj/store.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void fail_line(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw bcj::Error(bcj::ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

struct SimulateOptions {
  std::string mode = "BCJ";
  std::size_t items = 10;
  std::size_t criteria = 1;
  std::string strategy = "entropy";
  std::size_t budget = 100;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  std::size_t swaps = 0;
  std::size_t threads = 0;
  std::string out;
};

int run_simulate(const SimulateOptions& o) {
  bcj::SimulationConfig cfg;
  cfg.mode = bcj::mode_from_string(o.mode);
  cfg.items = o.items;
  cfg.criteria = o.criteria;
  cfg.strategy = bcj::strategy_from_string(o.strategy);
  cfg.budget = o.budget;
  cfg.noise = o.noise;
  cfg.seed = o.seed;
  cfg.repeats = o.repeats;
  cfg.criterion_swaps = o.swaps;
  cfg.threads = o.threads;
  const bcj::SimulationResult result = bcj::simulate(cfg);

  if (!o.out.empty()) {
    const fs::path dir(o.out);
    ensure_dir(dir);
    bcj::write_tau_summary_csv(dir / "tau_summary.csv", result.curve);
    const int width = static_cast<int>(std::to_string(result.runs.size()).size());
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      char name[64];
      std::snprintf(name, sizeof(name), "tau_run_%0*zu.csv", width, r + 1);
      bcj::write_tau_curve_csv(dir / name, result.runs[r]);
    }
  }
  json summary{{"repeats", cfg.repeats}, {"initial_mean_tau", result.initial_mean}};
  if (!result.curve.empty()) {
    const bcj::TauPoint& last = result.curve.back();
    summary["final"] = {{"comparisons", last.comparisons}, {"mean_tau", last.mean}, {"sd_tau", last.sd}};
  }
  std::cout << summary.dump() << '\n';
  return 0;
}

int run_split(const std::string& marks, std::size_t groups, std::uint64_t seed, const std::string& out) {
  std::ifstream in(marks);
  if (!in) throw bcj::Error(bcj::ErrorCode::Io, "cannot read " + marks);
  const auto split = bcj::stratified_split(bcj::read_marks_csv(in), groups, seed);

  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::binary);
    if (!file) throw bcj::Error(bcj::ErrorCode::Io, "cannot open " + out + " for writing");
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "id,mark,group\n";
  for (std::size_t g = 0; g < split.size(); ++g) {
    for (const auto& item : split[g]) os << item.id << ',' << item.mark << ',' << g + 1 << '\n';
  }
  os.flush();
  if (!os) throw bcj::Error(bcj::ErrorCode::Io, "failed writing " + (out.empty() ? "stdout" : out));
  return 0;
}

bcj::Session load_session(const std::string& dir) {
  const bcj::StoredSession stored = bcj::read_session_dir(dir);
  return bcj::Session::replay(stored.config, stored.log);
}

int run_replay(const std::string& dir, const std::string& out) {
  const bcj::Session session = load_session(dir);
  const std::string text = session.results().dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  file << text << '\n';
  if (!file) throw bcj::Error(bcj::ErrorCode::Io, "failed writing " + out);
  return 0;
}

int run_export(const std::string& dir, const std::string& out) {
  const bcj::Session session = load_session(dir);
  json files = json::array();
  for (const auto& path : bcj::export_session(session, out)) files.push_back(path.string());
  std::cout << json{{"files", files}}.dump() << '\n';
  return 0;
}

int run_serve(const std::string& host, int port, const std::string& data_dir, const std::string& token) {
  std::optional<fs::path> dir;
  if (!data_dir.empty()) dir = data_dir;
  bcj::SessionStore store(dir);
  bcj::Api api(store, token.empty() ? std::nullopt : std::optional<std::string>(token));
  httplib::Server server;
  bcj::mount(server, api);
  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw bcj::Error(bcj::ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port));
  std::cout << json{{"listening", host}, {"port", bound}}.dump() << std::endl;
  server.listen_after_bind();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian comparative judgement tools"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run headless sessions against a synthetic judge");
  simulate->add_option("--mode", sim.mode, "BCJ or MBCJ")->capture_default_str();
  simulate->add_option("--items", sim.items, "Number of items")->capture_default_str();
  simulate->add_option("--criteria", sim.criteria, "Number of criteria (MBCJ)")->capture_default_str();
  simulate->add_option("--strategy", sim.strategy, "random, entropy or combined_entropy")->capture_default_str();
  simulate->add_option("--budget", sim.budget, "Comparisons per run")->capture_default_str();
  simulate->add_option("--noise", sim.noise, "Probability the judge answers against the truth")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  simulate->add_option("--repeats", sim.repeats, "Independent runs")->capture_default_str();
  simulate->add_option("--swaps", sim.swaps, "Adjacent swaps applied per criterion truth (MBCJ)")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "Worker threads, 0 for all cores")->capture_default_str();
  simulate->add_option("--out", sim.out, "Directory for tau CSV files");

  std::string marks, split_out;
  std::size_t groups = 1;
  std::uint64_t split_seed = 0;
  auto* split = app.add_subcommand("split", "Stratified split of marked work into groups");
  split->add_option("--marks", marks, "CSV with header id,mark")->required();
  split->add_option("--groups", groups, "Number of groups")->required();
  split->add_option("--seed", split_seed, "Seed for shuffling equal marks")->capture_default_str();
  split->add_option("--out", split_out, "Output CSV (default stdout)");

  std::string replay_dir, replay_out;
  auto* replay = app.add_subcommand("replay", "Rebuild a stored session from its audit log and print results");
  replay->add_option("--session-dir", replay_dir, "Directory with config.json and audit.jsonl")->required();
  replay->add_option("--out", replay_out, "Output JSON file (default stdout)");

  std::string export_dir, export_out;
  auto* exporter = app.add_subcommand("export", "Write plot data CSVs for a stored session");
  exporter->add_option("--session-dir", export_dir, "Directory with config.json and audit.jsonl")->required();
  exporter->add_option("--out", export_out, "Output directory")->required();

  std::string host = "127.0.0.1", data_dir, token;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port, 0 for any free port")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Persist sessions under this directory");
  serve->add_option("--token", token, "Require this bearer token");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail_line("usage", e.what());
    return 2;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*split) return run_split(marks, groups, split_seed, split_out);
    if (*replay) return run_replay(replay_dir, replay_out);
    if (*exporter) return run_export(export_dir, export_out);
    if (*serve) return run_serve(host, port, data_dir, token);
  } catch (const bcj::Error& e) {
    fail_line(bcj::to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    fail_line("internal", e.what());
    return 1;
  }
  return 1;
}
