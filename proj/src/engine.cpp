#include "fogsim/engine.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace fogsim {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::TaskEmitted: return "task-emitted";
    case EventKind::TaskArrivedAtNode: return "task-arrived";
    case EventKind::ProcessingStarted: return "processing-started";
    case EventKind::ProcessingCompleted: return "processing-completed";
    case EventKind::ResultDelivered: return "result-delivered";
    case EventKind::ControllerEvaluate: return "controller-evaluate";
    case EventKind::PowerSignal: return "power-signal";
    case EventKind::CloudArrival: return "cloud-arrival";
    case EventKind::CloudCompleted: return "cloud-completed";
  }
  return "?";
}

void EventQueue::schedule(Event e, SimTime now) {
  if (e.time < now) {
    throw PastEventError("event '" + std::string(to_string(e.kind)) +
                         "' scheduled at " + std::to_string(e.time) +
                         " ns, before clock " + std::to_string(now) + " ns");
  }
  e.seq = next_seq_++;
  heap_.push(e);
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  return e;
}

Simulation::Simulation(Scenario scenario)
    : sc_(std::move(scenario)),
      topo_(build_topology(sc_)),
      nodes_(build_fog_nodes(sc_)),
      vehicles_(build_vehicles(sc_, topo_)) {
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    vehicle_index_[vehicles_[i].id] = i;
  }
  placement_ = resolve_placement(sc_, vehicles_);
  for (const NodePlacement& np : placement_.nodes) {
    for (const std::string& m : np.relocated_modules) {
      cloud_modules_.insert({np.node, m});
    }
  }
  statistical_spec_ = sc_.spec_for(TaskType::StatisticalTrafficData);
  cloud_ledger_ = {0.0, 0, sc_.cloud.idle_power_w};
}

bool Simulation::module_runs_in_cloud(NodeId node, const std::string& module) const {
  if (cloud_modules_.count({node, module})) return true;
  return sc_.module_by_id(module).placement == Tier::Cloud;
}

void Simulation::prime_emissions() {
  for (const VehicleCfg& v : vehicles_) {
    for (const auto& [t, spec] : emission_schedule(v, sc_.horizon)) {
      Task task;
      task.id = static_cast<TaskId>(tasks_.size());
      task.type = spec.type;
      task.cpu_length_mi = spec.cpu_length_mi;
      task.network_length = spec.network_length;
      task.target_module = spec.target_module;
      task.origin = v.id;
      task.emission = t;
      tasks_.push_back(task);
      metrics_.count_emitted();
      queue_.schedule({.time = t, .kind = EventKind::TaskEmitted, .task = task.id}, 0);
    }
  }
}

MetricsReport Simulation::run(SimTime until) {
  if (ran_) {
    throw std::logic_error("Simulation::run may only be called once");
  }
  ran_ = true;
  prime_emissions();
  if (sc_.policy.dec_enabled &&
      sc_.policy.controller == PolicyConfig::Controller::Periodic) {
    queue_.schedule({.time = 0, .kind = EventKind::ControllerEvaluate}, 0);
  }

  while (!queue_.empty()) {
    if (queue_.top().time > until) break;
    Event e = queue_.pop();
    assert(e.time >= now_);
    now_ = e.time;
    if (obs_.on_event) obs_.on_event(e);
    dispatch(e);
  }

  SimTime end = (until == kTimeNever) ? now_ : until;
  for (FogNode& n : nodes_.all()) {
    n.ledger.update(end, n.ledger.last_power_w);
  }
  cloud_ledger_.update(end, cloud_ledger_.last_power_w);

  MetricsReport report =
      metrics_.finalize(nodes_, cloud_ledger_.total_j, end, from_ms(1000.0));
  report.scenario_name = sc_.name;
  report.cell_name = sc_.name;
  report.threshold_ms = sc_.policy.offloading_threshold == kTimeNever
                            ? -1.0
                            : to_ms(sc_.policy.offloading_threshold);
  report.dec_enabled = sc_.policy.dec_enabled;
  return report;
}

void Simulation::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::TaskEmitted:
      on_task_emitted(tasks_[static_cast<std::size_t>(e.task)]);
      break;
    case EventKind::TaskArrivedAtNode:
      on_task_arrived(tasks_[static_cast<std::size_t>(e.task)], nodes_.by_id(e.node));
      break;
    case EventKind::ProcessingStarted:
      on_processing_started(nodes_.by_id(e.node));
      break;
    case EventKind::ProcessingCompleted:
      on_processing_completed(tasks_[static_cast<std::size_t>(e.task)],
                              nodes_.by_id(e.node));
      break;
    case EventKind::ResultDelivered:
      on_result_delivered(tasks_[static_cast<std::size_t>(e.task)]);
      break;
    case EventKind::ControllerEvaluate:
      report_state_change();
      if (now_ + sc_.policy.controller_period <= sc_.horizon) {
        queue_.schedule({.time = now_ + sc_.policy.controller_period,
                         .kind = EventKind::ControllerEvaluate},
                        now_);
      }
      break;
    case EventKind::PowerSignal:
      on_power_signal(nodes_.by_id(e.node), e.signal);
      break;
    case EventKind::CloudArrival:
      on_cloud_arrival(tasks_[static_cast<std::size_t>(e.task)]);
      break;
    case EventKind::CloudCompleted:
      on_cloud_completed(tasks_[static_cast<std::size_t>(e.task)]);
      break;
  }
}

void Simulation::on_task_emitted(Task& t) {
  const VehicleCfg& v = vehicles_[vehicle_index_.at(t.origin)];
  t.primary_node = v.attached_node;
  t.leg_sensor = from_ms(topo_.sensor_vehicle_latency_ms());
  if (t.type == TaskType::PriorityRequest) {
    t.leg_actuator = from_ms(topo_.sensor_vehicle_latency_ms());
  }
  t.vf_transmission = from_ms(
      transmission_delay_ms(t.network_length, sc_.vehicle_defaults.bw_uplink));
  t.vf_latency = from_ms(topo_.vehicle_fog_latency_ms(t.origin, t.primary_node));
  SimTime arrival = now_ + t.leg_sensor + t.vf_transmission + t.vf_latency;
  queue_.schedule({.time = arrival,
                   .kind = EventKind::TaskArrivedAtNode,
                   .task = t.id,
                   .node = t.primary_node},
                  now_);
}

void Simulation::on_task_arrived(Task& t, FogNode& n) {
  if (t.arrival_primary < 0) t.arrival_primary = now_;

  if (!t.already_offloaded && module_runs_in_cloud(n.id, t.target_module)) {
    // The task's module lives in the cloud (configured or relocated); the
    // scheduling policy never sees it.
    metrics_.on_placement_forward();
    t.locus = Locus::Cloud;
    forward_to_cloud(n, t);
    if (sc_.policy.dec_enabled &&
        sc_.policy.controller == PolicyConfig::Controller::EventDriven) {
      report_state_change();
    }
    return;
  }

  OffloadDecision d =
      decide(t, n, topo_, nodes_, sc_.cloud, sc_.policy, now_);
  if (obs_.on_decision) obs_.on_decision(t, d, now_);
  metrics_.on_decision(d);

  switch (d.action) {
    case OffloadAction::ProcessLocally:
      admit_local(n, t);
      break;
    case OffloadAction::OffloadToNeighbour:
      forward_to_neighbour(n, d.target, t);
      break;
    case OffloadAction::SendToCloud:
      t.locus = Locus::Cloud;
      forward_to_cloud(n, t);
      break;
  }

  if (sc_.policy.dec_enabled &&
      sc_.policy.controller == PolicyConfig::Controller::EventDriven) {
    report_state_change();
  }
}

void Simulation::admit_local(FogNode& n, Task& t) {
  t.serving_node = n.id;
  t.arrival_serving = now_;
  t.predicted_wait = n.queue_waiting_time(now_);
  t.service_time = n.expected_process_time_mi(t.cpu_length_mi);
  n.push_task(t.id, t.service_time);
  maybe_start_service(n);
}

void Simulation::forward_to_neighbour(FogNode& from, NodeId target, Task& t) {
  assert(!t.already_offloaded);
  t.already_offloaded = true;
  t.locus = Locus::NeighbourFog;
  t.ff_transmission =
      from_ms(transmission_delay_ms(t.network_length, from.bw_uplink));
  t.ff_latency = from_ms(topo_.fog_fog_latency_ms(from.id, target));
  // A switched-off target is booted right away so it can take the task.
  if (sc_.policy.dec_enabled && nodes_.by_id(target).power == PowerState::Off) {
    queue_.schedule({.time = now_,
                     .kind = EventKind::PowerSignal,
                     .node = target,
                     .signal = PowerState::On},
                    now_);
  }
  // Selection and handoff are atomic: the task joins the neighbour's queue
  // within this dispatch, so the very next decision sees its occupancy. The
  // hop cost is charged on the task's latency record and on the result's way
  // back (both traversals for round trips, one for cloud-bound results).
  if (obs_.on_event) {
    obs_.on_event({.time = now_,
                   .seq = 0,
                   .kind = EventKind::TaskArrivedAtNode,
                   .task = t.id,
                   .node = target,
                   .signal = PowerState::Off});
  }
  on_task_arrived(t, nodes_.by_id(target));
}

void Simulation::forward_to_cloud(FogNode& from, Task& t) {
  t.fc_transmission =
      from_ms(transmission_delay_ms(t.network_length, from.bw_uplink));
  t.fc_latency = from_ms(topo_.fog_cloud_latency_ms());
  queue_.schedule({.time = now_ + t.fc_transmission + t.fc_latency,
                   .kind = EventKind::CloudArrival,
                   .task = t.id},
                  now_);
}

void Simulation::maybe_start_service(FogNode& n) {
  if (n.power != PowerState::On || n.processing || n.start_pending ||
      n.queue_empty()) {
    return;
  }
  n.start_pending = true;
  SimTime when = now_ < n.available_at ? n.available_at : now_;
  queue_.schedule(
      {.time = when, .kind = EventKind::ProcessingStarted, .node = n.id}, now_);
}

void Simulation::on_processing_started(FogNode& n) {
  n.start_pending = false;
  if (n.power != PowerState::On || n.processing || n.queue_empty()) return;
  QueuedTask q = n.pop_task();
  Task& t = tasks_[static_cast<std::size_t>(q.id)];
  n.processing = true;
  n.in_service = q.id;
  n.in_service_done = now_ + q.service_time;
  n.ledger.update(now_, n.busy_power_w);
  emit_power(n, n.power);
  t.service_start = now_;
  queue_.schedule({.time = n.in_service_done,
                   .kind = EventKind::ProcessingCompleted,
                   .task = q.id,
                   .node = n.id},
                  now_);
}

void Simulation::on_processing_completed(Task& t, FogNode& n) {
  assert(n.processing && n.in_service == t.id);
  n.processing = false;
  n.in_service = kNoTask;
  n.ledger.update(now_, n.idle_power_w);
  emit_power(n, n.power);
  t.service_end = now_;
  metrics_.on_fog_executed(now_);

  if (t.type == TaskType::PriorityRequest) {
    SimTime back = t.vf_transmission + t.vf_latency + t.leg_actuator;
    if (t.locus == Locus::NeighbourFog) {
      back += 2 * (t.ff_transmission + t.ff_latency);
    }
    queue_.schedule({.time = now_ + back,
                     .kind = EventKind::ResultDelivered,
                     .task = t.id},
                    now_);
  } else {
    // The processed sensor data continues to the cloud as a statistical
    // traffic message.
    t.fc_transmission = from_ms(
        transmission_delay_ms(statistical_spec_.network_length, n.bw_uplink));
    t.fc_latency = from_ms(topo_.fog_cloud_latency_ms());
    SimTime leg = t.fc_transmission + t.fc_latency;
    if (t.locus == Locus::NeighbourFog) leg += t.ff_transmission + t.ff_latency;
    queue_.schedule({.time = now_ + leg,
                     .kind = EventKind::CloudArrival,
                     .task = t.id},
                    now_);
  }

  maybe_start_service(n);
  if (sc_.policy.dec_enabled &&
      sc_.policy.controller == PolicyConfig::Controller::EventDriven) {
    report_state_change();
  }
}

void Simulation::on_result_delivered(Task& t) {
  t.loop_end = now_;
  metrics_.on_loop_complete(t);
}

void Simulation::on_power_signal(FogNode& n, PowerState signal) {
  PowerState old_state = n.power;
  bool applied = apply_power_signal(n, signal, now_, sc_.policy.boot_energy_j,
                                    sc_.policy.boot_delay);
  if (!applied) return;
  emit_power(n, old_state);
  if (signal == PowerState::On) {
    maybe_start_service(n);
  }
}

void Simulation::on_cloud_arrival(Task& t) {
  if (t.locus == Locus::Cloud) {
    t.arrival_serving = now_;
    t.service_start = now_;
    t.service_time = cloud_process_time(sc_.cloud, t.cpu_length_mi);
    cloud_enter();
    queue_.schedule({.time = now_ + t.service_time,
                     .kind = EventKind::CloudCompleted,
                     .task = t.id},
                    now_);
    return;
  }
  // Statistical data from a fog node reaching cloud storage closes loop B;
  // the global module still processes it for the energy account.
  t.loop_end = now_;
  metrics_.on_loop_complete(t);
  cloud_enter();
  SimTime stat_service =
      cloud_process_time(sc_.cloud, statistical_spec_.cpu_length_mi);
  queue_.schedule({.time = now_ + stat_service,
                   .kind = EventKind::CloudCompleted,
                   .task = t.id},
                  now_);
}

void Simulation::on_cloud_completed(Task& t) {
  cloud_exit();
  if (t.locus != Locus::Cloud) return;  // statistical post-processing only
  t.service_end = now_;
  metrics_.on_cloud_executed();
  if (t.type == TaskType::PriorityRequest) {
    SimTime back = t.fc_transmission + t.fc_latency + t.vf_transmission +
                   t.vf_latency + t.leg_actuator;
    queue_.schedule({.time = now_ + back,
                     .kind = EventKind::ResultDelivered,
                     .task = t.id},
                    now_);
  } else {
    // Sensor data processed in the cloud already sits next to the global
    // module; loop B ends at completion.
    t.loop_end = now_;
    metrics_.on_loop_complete(t);
  }
}

void Simulation::report_state_change() {
  if (!sc_.policy.dec_enabled) return;
  std::vector<NodeStatus> statuses;
  statuses.reserve(nodes_.all().size());
  for (const FogNode& n : nodes_.all()) {
    statuses.push_back({n.id, n.power, n.queue_size(), n.processing});
  }
  for (const PowerSignalCmd& cmd : evaluate_power_signals(statuses)) {
    queue_.schedule({.time = now_,
                     .kind = EventKind::PowerSignal,
                     .node = cmd.node,
                     .signal = cmd.to},
                    now_);
  }
}

void Simulation::cloud_enter() {
  if (cloud_in_service_++ == 0) {
    cloud_ledger_.update(now_, sc_.cloud.busy_power_w);
  }
}

void Simulation::cloud_exit() {
  assert(cloud_in_service_ > 0);
  if (--cloud_in_service_ == 0) {
    cloud_ledger_.update(now_, sc_.cloud.idle_power_w);
  }
}

void Simulation::emit_power(const FogNode& n, PowerState old_state) {
  if (obs_.on_power) {
    obs_.on_power(n.id, n.ledger.last_power_w, now_, old_state, n.power,
                  n.queue_size(), n.processing);
  }
}

}  // namespace fogsim
