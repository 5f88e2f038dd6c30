#pragma once

#include <map>
#include <string>
#include <vector>

#include "fogsim/node.hpp"
#include "fogsim/offload_policy.hpp"
#include "fogsim/types.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

/// Transfer time of `network_length` units over a link of the given
/// bandwidth, in milliseconds. Rejects non-positive bandwidths.
double transmission_delay_ms(double network_length, double bandwidth);

enum class Loop : std::uint8_t { A, B };
const char* to_string(Loop l);

// Per-task latency decomposition. Each component stores the nanoseconds the
// task actually spent on that kind of leg, already summed over traversals, so
// the components add up to the total exactly.
struct LatencyRecord {
  TaskId task_id = kNoTask;
  TaskType type = TaskType::PriorityRequest;
  Loop loop = Loop::A;
  Locus locus = Locus::PrimaryFog;
  VehicleId origin = -1;
  NodeId primary_node = kNoNode;
  NodeId serving_node = kNoNode;
  SimTime emission = 0;
  SimTime sensor_to_vehicle = 0;
  SimTime vf_transmission = 0;
  SimTime vf_propagation = 0;
  SimTime ff_transmission = 0;
  SimTime ff_propagation = 0;
  SimTime fc_transmission = 0;
  SimTime fc_link = 0;
  SimTime queue_wait = 0;
  SimTime processing = 0;
  SimTime vehicle_to_actuator = 0;
  SimTime total = 0;
};

/// Rebuilds the latency decomposition of a finished task from its trace.
/// Throws IncompleteTraceError when the task never reached a terminal state.
LatencyRecord assemble_latency(const Task& task);

/// Completions bucketed into windows (k*w, (k+1)*w]; a completion at t = 0
/// lands in the first bucket. `completions` must be sorted ascending.
std::vector<std::int64_t> throughput(const std::vector<SimTime>& completions,
                                     SimTime window);

struct LatencyStats {
  std::int64_t count = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
};

LatencyStats latency_stats(const std::vector<SimTime>& totals);

struct MetricsReport {
  std::string scenario_name;
  std::string cell_name;
  double horizon_ms = 0.0;
  double threshold_ms = -1.0;  // -1 encodes "infinite"
  bool dec_enabled = false;

  std::int64_t emitted_tasks = 0;
  std::int64_t completed_loop_a = 0;
  std::int64_t completed_loop_b = 0;
  std::int64_t fog_executed_tasks = 0;
  std::int64_t cloud_executed_tasks = 0;

  // Loop means over fog-processed tasks only and over every completed task.
  LatencyStats loop_a_fog, loop_a_all, loop_b_fog, loop_b_all;

  std::map<NodeId, double> node_energy_j;
  double fog_energy_total_j = 0.0;
  double cloud_energy_j = 0.0;

  std::int64_t decisions_local = 0;
  std::int64_t decisions_neighbour = 0;
  std::int64_t decisions_cloud = 0;
  std::int64_t placement_cloud_forwards = 0;

  double throughput_window_ms = 0.0;
  std::vector<std::int64_t> throughput_per_window;
};

// Append-only accumulation on the dispatch thread; the report is assembled
// once the run finishes.
class MetricsCollector {
 public:
  void count_emitted() { ++emitted_; }
  void on_decision(const OffloadDecision& d);
  void on_placement_forward() { ++placement_forwards_; }
  void on_fog_executed(SimTime when) { fog_completions_.push_back(when); }
  void on_cloud_executed() { ++cloud_executed_; }
  void on_loop_complete(const Task& task);

  const std::vector<LatencyRecord>& records() const { return records_; }

  MetricsReport finalize(const NodeStore& nodes, double cloud_energy_j,
                         SimTime end, SimTime throughput_window) const;

 private:
  std::vector<LatencyRecord> records_;
  std::vector<SimTime> fog_completions_;
  std::int64_t emitted_ = 0;
  std::int64_t cloud_executed_ = 0;
  std::int64_t local_ = 0, neighbour_ = 0, cloud_ = 0, placement_forwards_ = 0;
};

/// Summary as pretty-printed JSON; byte-stable for identical runs.
std::string report_json(const MetricsReport& r);

/// One CSV row per completed task, ordered by task id. Column order is fixed;
/// see README.
std::string tasks_csv(const std::vector<LatencyRecord>& records);

}  // namespace fogsim
