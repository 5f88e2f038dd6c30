#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fogsim/engine.hpp"
#include "fogsim/experiment.hpp"
#include "fogsim/metrics.hpp"
#include "fogsim/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fogsim;

Scenario load_or_default(const std::string& path, bool lenient) {
  std::vector<std::string> warnings;
  Scenario s = (path == "default")
                   ? paper_default_scenario()
                   : load_scenario(path, lenient, &warnings);
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  return s;
}

void apply_threshold_flag(Scenario& s, const std::string& threshold) {
  if (threshold.empty()) return;
  if (threshold == "inf" || threshold == "infinite") {
    s.policy.offloading_threshold = kTimeNever;
    return;
  }
  double ms = 0.0;
  try {
    ms = std::stod(threshold);
  } catch (const std::exception&) {
    throw ValidationError("--threshold: expected a number of milliseconds or 'inf'");
  }
  if (!(ms > 0.0)) throw ValidationError("--threshold: must be positive");
  s.policy.offloading_threshold = from_ms(ms);
}

void print_summary(const MetricsReport& r) {
  std::printf("scenario            : %s\n", r.scenario_name.c_str());
  std::printf("horizon             : %.3f ms\n", r.horizon_ms);
  if (r.threshold_ms < 0) {
    std::printf("offloading threshold: infinite (offloading disabled)\n");
  } else {
    std::printf("offloading threshold: %.3f ms\n", r.threshold_ms);
  }
  std::printf("energy control (DEC): %s\n", r.dec_enabled ? "on" : "off");
  std::printf("tasks emitted       : %lld\n",
              static_cast<long long>(r.emitted_tasks));
  std::printf("fog-executed tasks  : %lld\n",
              static_cast<long long>(r.fog_executed_tasks));
  std::printf("cloud-executed tasks: %lld\n",
              static_cast<long long>(r.cloud_executed_tasks));
  std::printf("loop A mean RTT     : fog %.4f ms (n=%lld), all %.4f ms (n=%lld)\n",
              r.loop_a_fog.mean_ms, static_cast<long long>(r.loop_a_fog.count),
              r.loop_a_all.mean_ms, static_cast<long long>(r.loop_a_all.count));
  std::printf("loop B mean RTT     : fog %.4f ms (n=%lld), all %.4f ms (n=%lld)\n",
              r.loop_b_fog.mean_ms, static_cast<long long>(r.loop_b_fog.count),
              r.loop_b_all.mean_ms, static_cast<long long>(r.loop_b_all.count));
  std::printf("decisions           : local %lld, neighbour %lld, cloud %lld\n",
              static_cast<long long>(r.decisions_local),
              static_cast<long long>(r.decisions_neighbour),
              static_cast<long long>(r.decisions_cloud));
  std::printf("fog energy          : %.4f J\n", r.fog_energy_total_j);
  for (const auto& [id, e] : r.node_energy_j) {
    std::printf("  node %-2d           : %.4f J\n", id, e);
  }
  std::printf("cloud energy        : %.4f J\n", r.cloud_energy_j);
}

int cmd_run(const std::string& scenario_path, const std::string& threshold,
            int dec_flag, double horizon_ms, bool trace,
            const std::string& out_dir, bool lenient) {
  Scenario s = load_or_default(scenario_path, lenient);
  apply_threshold_flag(s, threshold);
  if (dec_flag >= 0) s.policy.dec_enabled = dec_flag != 0;
  if (horizon_ms >= 0.0) s.horizon = from_ms(horizon_ms);

  ExperimentCell cell{s.name, s.policy.offloading_threshold, s.policy.dec_enabled};
  RunOptions opts;
  opts.out_dir = out_dir;
  opts.trace = trace;
  std::vector<CellResult> results = run_experiments({cell}, s, opts);
  for (const std::string& w : results[0].warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  if (!results[0].ok) {
    std::cerr << "error: " << results[0].error << "\n";
    return 3;
  }
  print_summary(results[0].report);
  if (!out_dir.empty()) {
    std::printf("reports written to  : %s\n",
                (fs::path(out_dir) / cell.name).string().c_str());
  }
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_dir,
              double horizon_ms, int jobs, bool trace, bool lenient) {
  Scenario s = load_or_default(scenario_path, lenient);
  RunOptions opts;
  opts.out_dir = out_dir;
  opts.trace = trace;
  opts.jobs = jobs;
  if (horizon_ms >= 0.0) opts.horizon_override = from_ms(horizon_ms);

  std::vector<CellResult> results = run_experiments(table6_matrix(), s, opts);
  for (const std::string& w : results.empty() ? std::vector<std::string>{}
                                              : results[0].warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  bool any_failed = false;
  for (const CellResult& r : results) {
    if (r.ok) {
      std::printf("%-20s loop-A fog mean %10.4f ms, fog tasks %6lld, "
                  "fog energy %12.4f J  (%.2fs)\n",
                  r.cell.name.c_str(), r.report.loop_a_fog.mean_ms,
                  static_cast<long long>(r.report.fog_executed_tasks),
                  r.report.fog_energy_total_j, r.wall_seconds);
    } else {
      any_failed = true;
      std::printf("%-20s FAILED: %s\n", r.cell.name.c_str(), r.error.c_str());
    }
  }
  std::printf("comparison table    : %s\n",
              (fs::path(out_dir) / "comparison.csv").string().c_str());
  return any_failed ? 3 : 0;
}

int cmd_report(const std::string& dir) {
  fs::path comparison = fs::path(dir) / "comparison.csv";
  fs::path report = fs::path(dir) / "report.json";
  fs::path target;
  if (fs::exists(comparison)) {
    target = comparison;
  } else if (fs::exists(report)) {
    target = report;
  } else {
    std::cerr << "error: no comparison.csv or report.json under '" << dir << "'\n";
    return 2;
  }
  std::ifstream in(target, std::ios::binary);
  std::cout << in.rdbuf();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic discrete-event simulator of a three-tier "
               "vehicular fog system with dynamic task scheduling and "
               "dynamic energy control"};
  app.require_subcommand(1);

  // run
  std::string run_scenario;
  std::string run_threshold;
  int run_dec = -1;
  double run_horizon = -1.0;
  bool run_trace = false;
  std::string run_out;
  bool run_lenient = false;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", run_scenario,
                  "Scenario JSON path, or 'default' for the bundled scenario")
      ->required();
  run->add_option("--threshold", run_threshold,
                  "Offloading threshold in ms, or 'inf'");
  run->add_flag_callback("--dec", [&run_dec] { run_dec = 1; },
                         "Enable dynamic energy control");
  run->add_flag_callback("--no-dec", [&run_dec] { run_dec = 0; },
                         "Disable dynamic energy control");
  run->add_option("--horizon", run_horizon, "Simulated horizon in ms");
  run->add_flag("--trace", run_trace, "Write event/decision/power trace CSVs");
  run->add_option("--out", run_out, "Output directory for report.json and tasks.csv");
  run->add_flag("--lenient", run_lenient, "Warn on unknown scenario fields instead of failing");

  // sweep
  std::string sweep_scenario = "default";
  std::string sweep_out = "sweep-out";
  double sweep_horizon = -1.0;
  int sweep_jobs = 1;
  bool sweep_trace = false;
  bool sweep_lenient = false;
  bool sweep_table6 = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run the standard threshold/energy-control matrix");
  sweep->add_flag("--table6", sweep_table6,
                  "Run the 8-cell matrix (no-offloading and 50/100/200 ms, "
                  "each with and without DEC)");
  sweep->add_option("--scenario", sweep_scenario,
                    "Scenario JSON path, or 'default'");
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--horizon", sweep_horizon, "Override horizon in ms");
  sweep->add_option("--jobs", sweep_jobs, "Cells to run in parallel");
  sweep->add_flag("--trace", sweep_trace, "Write trace CSVs per cell");
  sweep->add_flag("--lenient", sweep_lenient, "Warn on unknown scenario fields");

  // report
  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "Print a results directory");
  report->add_option("dir", report_dir, "Cell or sweep output directory")->required();

  // print-default
  CLI::App* printdef =
      app.add_subcommand("print-default", "Print the bundled default scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_scenario, run_threshold, run_dec, run_horizon,
                     run_trace, run_out, run_lenient);
    }
    if (sweep->parsed()) {
      if (!sweep_table6) {
        std::cerr << "error: sweep currently requires --table6\n";
        return 2;
      }
      return cmd_sweep(sweep_scenario, sweep_out, sweep_horizon, sweep_jobs,
                       sweep_trace, sweep_lenient);
    }
    if (report->parsed()) {
      return cmd_report(report_dir);
    }
    if (printdef->parsed()) {
      std::cout << paper_default_scenario_text();
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const NoCoverageError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
