#pragma once

#include <string>
#include <vector>

#include "fogsim/metrics.hpp"
#include "fogsim/scenario.hpp"
#include "fogsim/types.hpp"

namespace fogsim {

struct ExperimentCell {
  std::string name;
  SimTime threshold = kTimeNever;
  bool dec_enabled = false;
};

/// The eight standard cells: no-offloading and thresholds 50/100/200 ms, each
/// with the energy controller off and on.
std::vector<ExperimentCell> table6_matrix();

struct RunOptions {
  std::string out_dir;          // empty: keep results in memory only
  bool write_tasks = true;      // tasks.csv per cell
  bool trace = false;           // event/decision/power trace CSVs per cell
  SimTime horizon_override = -1;  // < 0: use the scenario's horizon
  int jobs = 1;                   // parallel cells; each cell stays single-threaded
};

struct CellResult {
  ExperimentCell cell;
  bool ok = false;
  std::string error;
  MetricsReport report;
  std::vector<std::string> warnings;  // e.g. infeasible module placement
  double wall_seconds = 0.0;
};

/// Runs every cell of the matrix over the base scenario. A failing cell is
/// reported in its result and does not stop the others. With an output
/// directory set, writes <out>/<cell>/report.json (+ tasks.csv, traces) and
/// <out>/comparison.csv.
std::vector<CellResult> run_experiments(const std::vector<ExperimentCell>& matrix,
                                        const Scenario& base,
                                        const RunOptions& opts);

/// Cross-cell table mirroring the latency / throughput / energy comparisons,
/// including the relative energy saving of each DEC cell against its no-DEC
/// counterpart at the same threshold.
std::string comparison_csv(const std::vector<CellResult>& results);

}  // namespace fogsim
