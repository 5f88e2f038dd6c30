#include "fogsim/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "fogsim/engine.hpp"

namespace fogsim {

namespace fs = std::filesystem;

std::vector<ExperimentCell> table6_matrix() {
  return {
      {"no-offloading", kTimeNever, false},
      {"no-offloading-dec", kTimeNever, true},
      {"offloading-50", from_ms(50.0), false},
      {"offloading-50-dec", from_ms(50.0), true},
      {"offloading-100", from_ms(100.0), false},
      {"offloading-100-dec", from_ms(100.0), true},
      {"offloading-200", from_ms(200.0), false},
      {"offloading-200-dec", from_ms(200.0), true},
  };
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << content;
}

struct TraceFiles {
  std::ofstream events;
  std::ofstream decisions;
  std::ofstream power;
};

SimObserver make_trace_observer(TraceFiles& files) {
  files.events << "time_ms,kind,task,node,signal\n";
  files.decisions << "time_ms,task,action,target,primary_queue_ms,"
                     "cloud_round_trip_ms,candidates\n";
  files.power << "time_ms,node,power_w,old_state,new_state,queue_size,processing\n";
  SimObserver obs;
  obs.on_event = [&files](const Event& e) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6f,%s,%lld,%d,%s\n", to_ms(e.time),
                  to_string(e.kind), static_cast<long long>(e.task), e.node,
                  e.kind == EventKind::PowerSignal ? to_string(e.signal) : "");
    files.events << buf;
  };
  obs.on_decision = [&files](const Task& t, const OffloadDecision& d, SimTime now) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f,%lld,%s,%d,%.6f,%.6f,", to_ms(now),
                  static_cast<long long>(t.id), to_string(d.action), d.target,
                  to_ms(d.primary_queue_wait),
                  d.cloud_compared ? to_ms(d.cloud_round_trip) : -1.0);
    files.decisions << buf;
    bool first = true;
    for (const NeighbourCost& c : d.candidates) {
      std::snprintf(buf, sizeof buf, "%s%d:%.6f:%.6f", first ? "" : "|", c.id,
                    to_ms(c.queue_wait), to_ms(c.link_latency));
      files.decisions << buf;
      first = false;
    }
    files.decisions << "\n";
  };
  obs.on_power = [&files](NodeId id, double power_w, SimTime now,
                          PowerState old_state, PowerState st,
                          std::size_t queue, bool processing) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6f,%d,%.4f,%s,%s,%zu,%d\n", to_ms(now),
                  id, power_w, to_string(old_state), to_string(st), queue,
                  processing ? 1 : 0);
    files.power << buf;
  };
  return obs;
}

CellResult run_cell(const ExperimentCell& cell, const Scenario& base,
                    const RunOptions& opts) {
  CellResult result;
  result.cell = cell;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Scenario s = base;
    s.policy.offloading_threshold = cell.threshold;
    s.policy.dec_enabled = cell.dec_enabled;
    if (opts.horizon_override >= 0) s.horizon = opts.horizon_override;

    fs::path cell_dir;
    TraceFiles traces;
    Simulation sim(s);
    result.warnings = sim.placement().warnings;
    if (!opts.out_dir.empty()) {
      cell_dir = fs::path(opts.out_dir) / cell.name;
      fs::create_directories(cell_dir);
      if (opts.trace) {
        traces.events.open(cell_dir / "trace_events.csv", std::ios::binary);
        traces.decisions.open(cell_dir / "trace_decisions.csv", std::ios::binary);
        traces.power.open(cell_dir / "trace_power.csv", std::ios::binary);
        sim.set_observer(make_trace_observer(traces));
      }
    }

    result.report = sim.run(s.horizon);
    result.report.cell_name = cell.name;

    if (!opts.out_dir.empty()) {
      write_file(cell_dir / "report.json", report_json(result.report));
      if (opts.write_tasks) {
        write_file(cell_dir / "tasks.csv", tasks_csv(sim.latency_records()));
      }
    }
    result.ok = true;
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace

std::vector<CellResult> run_experiments(const std::vector<ExperimentCell>& matrix,
                                        const Scenario& base,
                                        const RunOptions& opts) {
  std::vector<CellResult> results(matrix.size());
  int jobs = opts.jobs < 1 ? 1 : opts.jobs;
  if (jobs == 1) {
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      results[i] = run_cell(matrix[i], base, opts);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < matrix.size();
           i = next.fetch_add(1)) {
        results[i] = run_cell(matrix[i], base, opts);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs && w < static_cast<int>(matrix.size()); ++w) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) t.join();
  }

  if (!opts.out_dir.empty()) {
    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "comparison.csv", comparison_csv(results));
  }
  return results;
}

std::string comparison_csv(const std::vector<CellResult>& results) {
  std::string out =
      "cell,threshold_ms,dec,status,loop_a_fog_mean_ms,loop_a_all_mean_ms,"
      "loop_b_fog_mean_ms,loop_b_all_mean_ms,fog_executed_tasks,"
      "cloud_executed_tasks,fog_energy_j,cloud_energy_j,decisions_local,"
      "decisions_neighbour,decisions_cloud,energy_saving_vs_no_dec_pct\n";
  char buf[512];
  for (const CellResult& r : results) {
    std::string threshold = r.cell.threshold == kTimeNever
                                ? "inf"
                                : [&] {
                                    char t[32];
                                    std::snprintf(t, sizeof t, "%.3f",
                                                  to_ms(r.cell.threshold));
                                    return std::string(t);
                                  }();
    if (!r.ok) {
      out += r.cell.name + "," + threshold + "," +
             (r.cell.dec_enabled ? "1" : "0") + ",error,,,,,,,,,,,,\n";
      continue;
    }
    std::string saving;
    if (r.cell.dec_enabled) {
      for (const CellResult& other : results) {
        if (other.ok && !other.cell.dec_enabled &&
            other.cell.threshold == r.cell.threshold) {
          double pct = (other.report.fog_energy_total_j -
                        r.report.fog_energy_total_j) /
                       other.report.fog_energy_total_j * 100.0;
          std::snprintf(buf, sizeof buf, "%.6f", pct);
          saving = buf;
          break;
        }
      }
    }
    std::snprintf(buf, sizeof buf,
                  "%s,%s,%d,ok,%.6f,%.6f,%.6f,%.6f,%lld,%lld,%.6f,%.6f,%lld,"
                  "%lld,%lld,%s\n",
                  r.cell.name.c_str(), threshold.c_str(),
                  r.cell.dec_enabled ? 1 : 0, r.report.loop_a_fog.mean_ms,
                  r.report.loop_a_all.mean_ms, r.report.loop_b_fog.mean_ms,
                  r.report.loop_b_all.mean_ms,
                  static_cast<long long>(r.report.fog_executed_tasks),
                  static_cast<long long>(r.report.cloud_executed_tasks),
                  r.report.fog_energy_total_j, r.report.cloud_energy_j,
                  static_cast<long long>(r.report.decisions_local),
                  static_cast<long long>(r.report.decisions_neighbour),
                  static_cast<long long>(r.report.decisions_cloud),
                  saving.c_str());
    out += buf;
  }
  return out;
}

}  // namespace fogsim
