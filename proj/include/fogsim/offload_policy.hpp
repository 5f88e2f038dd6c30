#pragma once

#include <optional>
#include <vector>

#include "fogsim/node.hpp"
#include "fogsim/scenario.hpp"
#include "fogsim/topology.hpp"
#include "fogsim/types.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

enum class OffloadAction : std::uint8_t {
  ProcessLocally,
  OffloadToNeighbour,
  SendToCloud,
};
const char* to_string(OffloadAction a);

// Why a ProcessLocally decision was taken; used for admission audits.
enum class LocalReason : std::uint8_t {
  None,
  ImmediateFirstTask,
  UnderThreshold,
  AlreadyOffloaded,
  CloudNotWorthIt,
};
const char* to_string(LocalReason r);

struct NeighbourCost {
  NodeId id = kNoNode;
  SimTime queue_wait = 0;
  SimTime link_latency = 0;
  SimTime total = 0;
  bool over_threshold = false;
};

struct OffloadDecision {
  OffloadAction action = OffloadAction::ProcessLocally;
  NodeId target = kNoNode;
  LocalReason local_reason = LocalReason::None;
  SimTime primary_queue_wait = 0;
  SimTime cloud_round_trip = 0;  // filled when the cloud comparison ran
  bool cloud_compared = false;
  std::vector<NeighbourCost> candidates;  // filled when neighbours were scored
};

/// Cost snapshot of every neighbour of `f`: queue waiting time plus the
/// fog-fog link latency.
std::vector<NeighbourCost> neighbour_costs(NodeId f, const Topology& topo,
                                           const NodeStore& nodes, SimTime now);

/// Neighbour minimising queue wait plus link latency; ties go to the lowest
/// node id. Empty when `f` has no neighbours.
std::optional<NodeId> select_best_neighbour(NodeId f, const Topology& topo,
                                            const NodeStore& nodes, SimTime now);

/// Processing time of one task at the cloud, which runs it immediately.
SimTime cloud_process_time(const CloudConfig& cloud, double cpu_mi);

/// Round trip cost of shipping a task to the cloud and back: both link
/// traversals plus both transmissions, plus cloud processing when configured.
SimTime cloud_round_trip_cost(const Task& task, const FogNode& from,
                              const Topology& topo, const CloudConfig& cloud,
                              const PolicyConfig& policy);

/// Per-arrival scheduling decision for a task that just reached `primary`:
///  1. an empty idle node serves the task immediately;
///  2. under the threshold the task queues locally;
///  3. a task that was already offloaded once queues unconditionally;
///  4. otherwise the best neighbour takes it, unless that neighbour is itself
///     over its threshold at decision time;
///  5. failing that, the task goes to the cloud only when the local queue
///     wait exceeds the cloud round trip.
OffloadDecision decide(const Task& task, const FogNode& primary,
                       const Topology& topo, const NodeStore& nodes,
                       const CloudConfig& cloud, const PolicyConfig& policy,
                       SimTime now);

}  // namespace fogsim
