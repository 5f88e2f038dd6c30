#include "fogsim/offload_policy.hpp"

#include "fogsim/metrics.hpp"

namespace fogsim {

const char* to_string(OffloadAction a) {
  switch (a) {
    case OffloadAction::ProcessLocally: return "local";
    case OffloadAction::OffloadToNeighbour: return "neighbour";
    case OffloadAction::SendToCloud: return "cloud";
  }
  return "?";
}

const char* to_string(LocalReason r) {
  switch (r) {
    case LocalReason::None: return "none";
    case LocalReason::ImmediateFirstTask: return "first-task";
    case LocalReason::UnderThreshold: return "under-threshold";
    case LocalReason::AlreadyOffloaded: return "already-offloaded";
    case LocalReason::CloudNotWorthIt: return "cloud-not-worth-it";
  }
  return "?";
}

std::vector<NeighbourCost> neighbour_costs(NodeId f, const Topology& topo,
                                           const NodeStore& nodes, SimTime now) {
  std::vector<NeighbourCost> out;
  for (NodeId g : topo.neighbours(f)) {
    const FogNode& n = nodes.by_id(g);
    NeighbourCost c;
    c.id = g;
    c.queue_wait = n.queue_waiting_time(now);
    c.link_latency = from_ms(topo.fog_fog_latency_ms(f, g));
    c.total = c.queue_wait + c.link_latency;
    c.over_threshold = n.threshold_exceeded(now);
    out.push_back(c);
  }
  return out;
}

namespace {

const NeighbourCost* argmin(const std::vector<NeighbourCost>& costs) {
  const NeighbourCost* best = nullptr;
  for (const NeighbourCost& c : costs) {
    if (best == nullptr || c.total < best->total) best = &c;
    // costs come in ascending id order, so strict < keeps the lowest id on ties
  }
  return best;
}

}  // namespace

std::optional<NodeId> select_best_neighbour(NodeId f, const Topology& topo,
                                            const NodeStore& nodes, SimTime now) {
  std::vector<NeighbourCost> costs = neighbour_costs(f, topo, nodes, now);
  const NeighbourCost* best = argmin(costs);
  if (best == nullptr) return std::nullopt;
  return best->id;
}

SimTime cloud_process_time(const CloudConfig& cloud, double cpu_mi) {
  return from_seconds(cpu_mi / cloud.mips);
}

SimTime cloud_round_trip_cost(const Task& task, const FogNode& from,
                              const Topology& topo, const CloudConfig& cloud,
                              const PolicyConfig& policy) {
  SimTime link = from_ms(topo.fog_cloud_latency_ms());
  SimTime trans = from_ms(transmission_delay_ms(task.network_length, from.bw_uplink));
  SimTime cost = 2 * (link + trans);
  if (policy.cloud_compare_includes_processing) {
    cost += cloud_process_time(cloud, task.cpu_length_mi);
  }
  return cost;
}

OffloadDecision decide(const Task& task, const FogNode& primary,
                       const Topology& topo, const NodeStore& nodes,
                       const CloudConfig& cloud, const PolicyConfig& policy,
                       SimTime now) {
  OffloadDecision d;
  d.primary_queue_wait = primary.queue_waiting_time(now);

  if (primary.queue_empty() && !primary.processing) {
    d.action = OffloadAction::ProcessLocally;
    d.local_reason = LocalReason::ImmediateFirstTask;
    return d;
  }
  if (!primary.threshold_exceeded(now)) {
    d.action = OffloadAction::ProcessLocally;
    d.local_reason = LocalReason::UnderThreshold;
    return d;
  }
  if (task.already_offloaded) {
    d.action = OffloadAction::ProcessLocally;
    d.local_reason = LocalReason::AlreadyOffloaded;
    return d;
  }

  d.candidates = neighbour_costs(primary.id, topo, nodes, now);
  const NeighbourCost* best = argmin(d.candidates);
  if (best != nullptr && !best->over_threshold) {
    d.action = OffloadAction::OffloadToNeighbour;
    d.target = best->id;
    return d;
  }

  d.cloud_round_trip = cloud_round_trip_cost(task, primary, topo, cloud, policy);
  d.cloud_compared = true;
  if (d.primary_queue_wait > d.cloud_round_trip) {
    d.action = OffloadAction::SendToCloud;
  } else {
    d.action = OffloadAction::ProcessLocally;
    d.local_reason = LocalReason::CloudNotWorthIt;
  }
  return d;
}

}  // namespace fogsim
