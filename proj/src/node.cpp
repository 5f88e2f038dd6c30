#include "fogsim/node.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace fogsim {

SimTime FogNode::expected_process_time(const TaskSpec& spec) const {
  return expected_process_time_mi(spec.cpu_length_mi);
}

SimTime FogNode::expected_process_time_mi(double cpu_mi) const {
  assert(mips > 0.0 && processing_units >= 1);
  // MI over MIPS yields seconds.
  return from_seconds(cpu_mi / (mips * static_cast<double>(processing_units)));
}

SimTime FogNode::queue_waiting_time(SimTime now) const {
  SimTime residual = 0;
  if (processing && in_service_done > now) {
    residual = in_service_done - now;
  }
  return residual + queued_work_;
}

bool FogNode::threshold_exceeded(SimTime now) const {
  return queue_waiting_time(now) > offloading_threshold;
}

void FogNode::push_task(TaskId task, SimTime service_time) {
  queue_.push_back({task, service_time});
  queued_work_ += service_time;
}

QueuedTask FogNode::pop_task() {
  assert(!queue_.empty());
  QueuedTask q = queue_.front();
  queue_.pop_front();
  queued_work_ -= q.service_time;
  return q;
}

NodeStore::NodeStore(std::vector<FogNode> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const FogNode& a, const FogNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (nodes_[i].id == nodes_[i + 1].id) {
      throw ValidationError("duplicate fog node id " + std::to_string(nodes_[i].id));
    }
  }
}

FogNode& NodeStore::by_id(NodeId id) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const FogNode& n, NodeId want) { return n.id < want; });
  if (it == nodes_.end() || it->id != id) {
    throw ValidationError("unknown fog node id " + std::to_string(id));
  }
  return *it;
}

const FogNode& NodeStore::by_id(NodeId id) const {
  return const_cast<NodeStore*>(this)->by_id(id);
}

}  // namespace fogsim
