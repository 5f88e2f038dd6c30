#pragma once

#include <deque>
#include <vector>

#include "fogsim/power_controller.hpp"
#include "fogsim/types.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

struct QueuedTask {
  TaskId id = kNoTask;
  SimTime service_time = 0;
};

// Fog-node runtime state: FCFS waiting queue, single in-service slot, power
// state and energy ledger. Mutated only by the engine's dispatch thread.
class FogNode {
 public:
  NodeId id = kNoNode;
  double mips = 0.0;
  int processing_units = 1;
  double ram = 0.0;
  double bw_uplink = 0.0;
  double bw_downlink = 0.0;
  double idle_power_w = 0.0;
  double busy_power_w = 0.0;
  int max_vehicles = 0;
  SimTime offloading_threshold = kTimeNever;  // kTimeNever disables offloading

  PowerState power = PowerState::Off;
  SimTime available_at = 0;  // end of boot, when a boot delay is configured
  bool processing = false;
  bool start_pending = false;  // a ProcessingStarted event is in flight
  TaskId in_service = kNoTask;
  SimTime in_service_done = 0;
  EnergyLedger ledger;

  /// Service time for one task: cpu length over (mips * processing units).
  SimTime expected_process_time(const TaskSpec& spec) const;
  SimTime expected_process_time_mi(double cpu_mi) const;

  /// Estimated wait a newly queued task would incur: the residual of the task
  /// in service plus the service times of everything already queued.
  SimTime queue_waiting_time(SimTime now) const;

  /// Strict comparison against the offloading threshold.
  bool threshold_exceeded(SimTime now) const;

  void push_task(TaskId task, SimTime service_time);
  QueuedTask pop_task();
  std::size_t queue_size() const { return queue_.size(); }
  bool queue_empty() const { return queue_.empty(); }
  const std::deque<QueuedTask>& queued() const { return queue_; }
  SimTime queued_work() const { return queued_work_; }

 private:
  std::deque<QueuedTask> queue_;
  SimTime queued_work_ = 0;  // sum of service times in queue_
};

// Fog nodes keyed by id.
class NodeStore {
 public:
  NodeStore() = default;
  explicit NodeStore(std::vector<FogNode> nodes);

  FogNode& by_id(NodeId id);
  const FogNode& by_id(NodeId id) const;
  std::vector<FogNode>& all() { return nodes_; }
  const std::vector<FogNode>& all() const { return nodes_; }

 private:
  std::vector<FogNode> nodes_;  // sorted by id
};

}  // namespace fogsim
