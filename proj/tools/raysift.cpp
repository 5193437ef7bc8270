// Copyright 2026 The raysift Authors
// SPDX-License-Identifier: Apache-2.0

// raysift: run pruned-vs-dense sequences and compare saved reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "raysift/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

nlohmann::json load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

int run_command(const std::string& config_path, const std::string& out_dir, const std::string& sweep,
                const std::optional<std::uint64_t>& seed, const std::optional<int>& threads, bool check) {
  raysift::RunConfig cfg;
  try {
    auto kv = raysift::KeyValueConfig::load(config_path);
    if (!out_dir.empty()) kv.set("run.output", out_dir);
    if (!sweep.empty()) kv.set("run.sweep", sweep);
    if (seed) kv.set("run.seed", std::to_string(*seed));
    if (threads) kv.set("render.threads", std::to_string(*threads));
    cfg = raysift::parse_run_config(kv);
  } catch (const raysift::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  raysift::SequenceReport report;
  try {
    report = raysift::run_sequence(cfg);
  } catch (const raysift::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::cout << raysift::emit_table(report.labels);
  std::cout << "wrote " << (cfg.output_dir / "report.json").string() << "\n";

  if (check) {
    const auto failures = raysift::check_report(cfg, report);
    for (const auto& f : failures) std::cerr << "check failed: " << f << "\n";
    if (!failures.empty()) return kExitCheck;
  }
  return kExitOk;
}

// Compares everything outside the timing block. Prints the first differing
// path of each label, or "identical".
int compare_command(const std::string& a_path, const std::string& b_path, bool check) {
  auto a = load_report(a_path);
  auto b = load_report(b_path);
  a.erase("timing");
  b.erase("timing");
  const auto patch = nlohmann::json::diff(a, b);
  if (patch.empty()) {
    std::cout << "identical (timing excluded)\n";
    return kExitOk;
  }
  std::cout << patch.size() << " difference(s) (timing excluded)\n";
  std::size_t shown = 0;
  for (const auto& op : patch) {
    if (shown++ == 20) {
      std::cout << "  ...\n";
      break;
    }
    const std::string path = op.value("path", "");
    std::cout << "  " << op.value("op", "") << " " << path;
    if (op.contains("value")) {
      nlohmann::json::json_pointer ptr(path);
      std::cout << ": " << (a.contains(ptr) ? a.at(ptr).dump() : "<absent>") << " -> " << op["value"].dump();
    }
    std::cout << "\n";
  }
  return check ? kExitCheck : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"raysift: empty-space pruning for mesh-guided volume rendering"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string sweep;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool run_check = false;
  auto* run = app.add_subcommand("run", "Render a sequence against the dense oracle");
  run->add_option("--config", config_path, "key = value config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides run.output)");
  run->add_option("--sweep", sweep, "Comma-separated preset labels, e.g. F,G,H,I,J");
  run->add_option("--seed", seed, "Sampler seed (overrides run.seed)");
  run->add_option("--threads", threads, "Render threads (overrides render.threads)");
  run->add_flag("--check", run_check, "Exit 3 if any label violates the check.* thresholds");

  std::string a_path;
  std::string b_path;
  bool compare_check = false;
  auto* compare = app.add_subcommand("compare", "Diff two report.json files, ignoring timing");
  compare->add_option("--a", a_path, "First report")->required();
  compare->add_option("--b", b_path, "Second report")->required();
  compare->add_flag("--check", compare_check, "Exit 3 when the reports differ");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_command(config_path, out_dir, sweep, seed, threads, run_check);
    return compare_command(a_path, b_path, compare_check);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
