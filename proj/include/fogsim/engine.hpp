#pragma once

#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "fogsim/metrics.hpp"
#include "fogsim/node.hpp"
#include "fogsim/offload_policy.hpp"
#include "fogsim/scenario.hpp"
#include "fogsim/topology.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

enum class EventKind : std::uint8_t {
  TaskEmitted,
  TaskArrivedAtNode,
  ProcessingStarted,
  ProcessingCompleted,
  ResultDelivered,
  ControllerEvaluate,
  PowerSignal,
  CloudArrival,
  CloudCompleted,
};
const char* to_string(EventKind k);

struct Event {
  SimTime time = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::TaskEmitted;
  TaskId task = kNoTask;
  NodeId node = kNoNode;
  PowerState signal = PowerState::Off;
};

// Future event list with stable (time, insertion order) dispatch.
class EventQueue {
 public:
  /// Assigns the insertion sequence number and enqueues. Throws
  /// PastEventError when the event lies before `now`.
  void schedule(Event e, SimTime now);

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const Event& top() const { return heap_.top(); }
  Event pop();

 private:
  struct After {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, After> heap_;
  std::uint64_t next_seq_ = 0;
};

// Hooks for tracing and property checks. All optional.
struct SimObserver {
  std::function<void(const Event&)> on_event;
  std::function<void(const Task&, const OffloadDecision&, SimTime)> on_decision;
  // Fired on every power-level change of a fog node, including idle/busy
  // switches while on. `state`, `queue_size` and `processing` describe the
  // node right after the change; `old_state` is the on/off state before it.
  std::function<void(NodeId, double power_w, SimTime, PowerState old_state,
                     PowerState state, std::size_t queue_size, bool processing)>
      on_power;
};

// Single-threaded deterministic simulation of one scenario. Construct, run
// once, then read the report, latency records and node state.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  void set_observer(SimObserver obs) { obs_ = std::move(obs); }

  /// Dispatches events in (time, sequence) order until the queue drains or
  /// the next event lies beyond `until`. Energy ledgers are settled at
  /// `until` (or at the last event when running unbounded). Identical
  /// scenarios produce bit-identical reports.
  MetricsReport run(SimTime until);

  const NodeStore& nodes() const { return nodes_; }
  const std::deque<Task>& tasks() const { return tasks_; }
  const std::vector<LatencyRecord>& latency_records() const {
    return metrics_.records();
  }
  const Topology& topology() const { return topo_; }
  const Scenario& scenario() const { return sc_; }
  const PlacementReport& placement() const { return placement_; }
  double cloud_energy_j() const { return cloud_ledger_.total_j; }
  SimTime now() const { return now_; }

 private:
  void prime_emissions();
  void dispatch(const Event& e);

  void on_task_emitted(Task& t);
  void on_task_arrived(Task& t, FogNode& n);
  void on_processing_started(FogNode& n);
  void on_processing_completed(Task& t, FogNode& n);
  void on_result_delivered(Task& t);
  void on_power_signal(FogNode& n, PowerState signal);
  void on_cloud_arrival(Task& t);
  void on_cloud_completed(Task& t);

  void admit_local(FogNode& n, Task& t);
  void forward_to_neighbour(FogNode& from, NodeId target, Task& t);
  void forward_to_cloud(FogNode& from, Task& t);
  void maybe_start_service(FogNode& n);
  void report_state_change();
  void cloud_enter();
  void cloud_exit();
  void emit_power(const FogNode& n, PowerState old_state);
  bool module_runs_in_cloud(NodeId node, const std::string& module) const;

  Scenario sc_;
  Topology topo_;
  NodeStore nodes_;
  std::vector<VehicleCfg> vehicles_;
  std::map<VehicleId, std::size_t> vehicle_index_;
  PlacementReport placement_;
  std::set<std::pair<NodeId, std::string>> cloud_modules_;  // per-node relocations
  TaskSpec statistical_spec_;

  std::deque<Task> tasks_;  // index == TaskId
  EventQueue queue_;
  SimTime now_ = 0;
  bool ran_ = false;

  int cloud_in_service_ = 0;
  EnergyLedger cloud_ledger_;

  MetricsCollector metrics_;
  SimObserver obs_;
};

}  // namespace fogsim
