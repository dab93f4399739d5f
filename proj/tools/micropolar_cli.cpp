// Command-line front end: run one experiment, re-check a recorded series, or
// sweep a set of configs. Exit status is 0 exactly when every required check passes.

#include <glob.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "micropolar/errors.hpp"
#include "micropolar/harness.hpp"
#include "micropolar/integrator.hpp"
#include "micropolar/runtime.hpp"

namespace fs = std::filesystem;
using namespace micropolar;

namespace {

constexpr int kFailedChecks = 1;
constexpr int kError = 2;

void print_records(const std::vector<diagnostics::CheckRecord>& records) {
  for (const auto& r : records) {
    std::printf("%-4s %s%s  measured=%.6g predicted=%.6g tol=%.3g%s%s\n", r.pass ? "PASS" : "FAIL",
                r.check.c_str(), r.required ? "" : " (info)", r.measured, r.predicted, r.tol,
                r.note.empty() ? "" : "  # ", r.note.c_str());
  }
}

int run_one(harness::ExperimentSpec spec) {
  const auto report = harness::run_experiment(spec);
  std::printf("experiment %s: window [%.6g, %.6g], max CFL %.3g\n", report.id.c_str(),
              report.window.t_min, report.window.t_max, report.max_cfl);
  print_records(report.records);
  std::printf("%s %s -> %s\n", report.pass() ? "PASS" : "FAIL", report.id.c_str(),
              spec.out_dir.string().c_str());
  return report.pass() ? 0 : kFailedChecks;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral micropolar fluid simulator and decay diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  run->add_option("--config", config_path, "Config file (key = value)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides out_dir)");

  std::string series_path;
  std::vector<std::string> checks;
  std::string hypothesis_text;
  std::string report_config;
  auto* report = app.add_subcommand("report", "Run checks on a recorded series CSV");
  report->add_option("--series", series_path, "Series CSV written by run")->required();
  report->add_option("--check", checks, "Check name (repeatable)")->required();
  report->add_option("--hypothesis", hypothesis_text, "Decay hypothesis, e.g. \"alpha=0.25 C0=5 c0=1\"");
  report->add_option("--config", report_config, "Config of the run (default: config.cfg beside the CSV)");

  std::string pattern;
  auto* sweep = app.add_subcommand("sweep", "Run every config matching a glob");
  sweep->add_option("--configs", pattern, "Glob of config files")->required();

  CLI11_PARSE(app, argc, argv);
  tune_allocator();

  try {
    if (*run) {
      auto spec = harness::load_config(config_path);
      if (!out_dir.empty()) spec.out_dir = out_dir;
      return run_one(spec);
    }
    if (*report) {
      const fs::path series_file(series_path);
      const fs::path cfg = report_config.empty() ? series_file.parent_path() / "config.cfg"
                                                 : fs::path(report_config);
      auto spec = harness::load_config(cfg);
      for (const auto& c : checks) {
        const auto& known = harness::known_checks();
        if (std::find(known.begin(), known.end(), c) == known.end()) {
          throw ConfigError("unknown check '" + c + "'");
        }
      }
      spec.checks = checks;
      if (!hypothesis_text.empty()) spec.hypothesis = harness::parse_hypothesis(hypothesis_text);
      const auto series = harness::read_csv(series_file);
      auto z0 = harness::make_initial_state(spec);
      dynamics::normalize_state(z0, spec.sim.dealias);
      const auto window = harness::window_for(spec, series);
      std::printf("series %s: %zu records, window [%.6g, %.6g]\n", series_path.c_str(),
                  series.size(), window.t_min, window.t_max);
      const auto records = harness::run_checks(spec, series, z0);
      print_records(records);
      return diagnostics::all_required_pass(records) ? 0 : kFailedChecks;
    }
    if (*sweep) {
      const auto files = expand_glob(pattern);
      if (files.empty()) {
        std::fprintf(stderr, "no configs match '%s'\n", pattern.c_str());
        return kError;
      }
      int status = 0;
      for (const auto& f : files) {
        std::printf("== %s\n", f.c_str());
        try {
          const int rc = run_one(harness::load_config(f));
          if (rc != 0) status = std::max(status, rc);
        } catch (const std::exception& e) {
          std::fprintf(stderr, "%s: %s\n", f.c_str(), e.what());
          status = kError;
        }
      }
      return status;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
  return kError;
}
