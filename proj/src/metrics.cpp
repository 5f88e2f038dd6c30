#include "fogsim/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <stdexcept>

namespace fogsim {

double transmission_delay_ms(double network_length, double bandwidth) {
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("bandwidth must be positive");
  }
  return network_length / bandwidth;
}

const char* to_string(Loop l) { return l == Loop::A ? "A" : "B"; }

LatencyRecord assemble_latency(const Task& t) {
  if (t.emission < 0 || t.loop_end < 0) {
    throw IncompleteTraceError("task " + std::to_string(t.id) +
                               " has no terminal timestamp");
  }
  LatencyRecord r;
  r.task_id = t.id;
  r.type = t.type;
  r.loop = (t.type == TaskType::PriorityRequest) ? Loop::A : Loop::B;
  r.locus = t.locus;
  r.origin = t.origin;
  r.primary_node = t.primary_node;
  r.serving_node = t.serving_node;
  r.emission = t.emission;

  // Priority results return to the vehicle, so their fog legs are traversed
  // twice. Sensor results continue to the cloud instead and end there.
  bool round_trip = (t.type == TaskType::PriorityRequest);
  SimTime vf_x = round_trip ? 2 : 1;

  r.sensor_to_vehicle = t.leg_sensor;
  r.vf_transmission = vf_x * t.vf_transmission;
  r.vf_propagation = vf_x * t.vf_latency;
  if (t.locus == Locus::NeighbourFog) {
    r.ff_transmission = vf_x * t.ff_transmission;
    r.ff_propagation = vf_x * t.ff_latency;
  }
  if (t.locus == Locus::Cloud) {
    SimTime fc_x = round_trip ? 2 : 1;
    r.fc_transmission = fc_x * t.fc_transmission;
    r.fc_link = fc_x * t.fc_latency;
    r.queue_wait = 0;  // the cloud serves on arrival
  } else {
    if (t.type == TaskType::SensorNonUrgent) {
      // one-way statistical upload after fog processing
      r.fc_transmission = t.fc_transmission;
      r.fc_link = t.fc_latency;
    }
    r.queue_wait = t.service_start - t.arrival_serving;
  }
  r.processing = t.service_time;
  r.vehicle_to_actuator = round_trip ? t.leg_actuator : 0;

  r.total = r.sensor_to_vehicle + r.vf_transmission + r.vf_propagation +
            r.ff_transmission + r.ff_propagation + r.fc_transmission +
            r.fc_link + r.queue_wait + r.processing + r.vehicle_to_actuator;
  assert(r.total == t.loop_end - t.emission);
  return r;
}

std::vector<std::int64_t> throughput(const std::vector<SimTime>& completions,
                                     SimTime window) {
  if (window <= 0) {
    throw std::invalid_argument("throughput window must be positive");
  }
  std::vector<std::int64_t> buckets;
  for (SimTime t : completions) {
    std::size_t idx =
        (t <= 0) ? 0 : static_cast<std::size_t>((t + window - 1) / window - 1);
    if (idx >= buckets.size()) buckets.resize(idx + 1, 0);
    ++buckets[idx];
  }
  return buckets;
}

LatencyStats latency_stats(const std::vector<SimTime>& totals) {
  LatencyStats s;
  s.count = static_cast<std::int64_t>(totals.size());
  if (totals.empty()) return s;
  std::vector<SimTime> sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (SimTime t : sorted) sum += static_cast<double>(t);
  s.mean_ms = sum / static_cast<double>(sorted.size()) / 1e6;
  auto rank = [&](double q) {
    std::size_t i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    if (i == 0) i = 1;
    return sorted[i - 1];
  };
  s.p50_ms = to_ms(rank(0.50));
  s.p95_ms = to_ms(rank(0.95));
  s.max_ms = to_ms(sorted.back());
  return s;
}

void MetricsCollector::on_decision(const OffloadDecision& d) {
  switch (d.action) {
    case OffloadAction::ProcessLocally: ++local_; break;
    case OffloadAction::OffloadToNeighbour: ++neighbour_; break;
    case OffloadAction::SendToCloud: ++cloud_; break;
  }
}

void MetricsCollector::on_loop_complete(const Task& task) {
  records_.push_back(assemble_latency(task));
}

MetricsReport MetricsCollector::finalize(const NodeStore& nodes,
                                         double cloud_energy_j, SimTime end,
                                         SimTime throughput_window) const {
  MetricsReport r;
  r.horizon_ms = to_ms(end);
  r.emitted_tasks = emitted_;
  r.cloud_executed_tasks = cloud_executed_;
  r.fog_executed_tasks = static_cast<std::int64_t>(fog_completions_.size());
  r.decisions_local = local_;
  r.decisions_neighbour = neighbour_;
  r.decisions_cloud = cloud_;
  r.placement_cloud_forwards = placement_forwards_;

  std::vector<SimTime> a_fog, a_all, b_fog, b_all;
  for (const LatencyRecord& rec : records_) {
    bool fog = rec.locus != Locus::Cloud;
    if (rec.loop == Loop::A) {
      ++r.completed_loop_a;
      a_all.push_back(rec.total);
      if (fog) a_fog.push_back(rec.total);
    } else {
      ++r.completed_loop_b;
      b_all.push_back(rec.total);
      if (fog) b_fog.push_back(rec.total);
    }
  }
  r.loop_a_fog = latency_stats(a_fog);
  r.loop_a_all = latency_stats(a_all);
  r.loop_b_fog = latency_stats(b_fog);
  r.loop_b_all = latency_stats(b_all);

  for (const FogNode& n : nodes.all()) {
    r.node_energy_j[n.id] = n.ledger.total_j;
    r.fog_energy_total_j += n.ledger.total_j;
  }
  r.cloud_energy_j = cloud_energy_j;

  r.throughput_window_ms = to_ms(throughput_window);
  r.throughput_per_window = throughput(fog_completions_, throughput_window);
  return r;
}

namespace {

nlohmann::json stats_json(const LatencyStats& s) {
  return {{"count", s.count},
          {"mean_ms", s.mean_ms},
          {"p50_ms", s.p50_ms},
          {"p95_ms", s.p95_ms},
          {"max_ms", s.max_ms}};
}

}  // namespace

std::string report_json(const MetricsReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario_name;
  j["cell"] = r.cell_name;
  j["horizon_ms"] = r.horizon_ms;
  if (r.threshold_ms < 0) {
    j["offloading_threshold_ms"] = "infinite";
  } else {
    j["offloading_threshold_ms"] = r.threshold_ms;
  }
  j["dec_enabled"] = r.dec_enabled;
  j["tasks"] = {{"emitted", r.emitted_tasks},
                {"completed_loop_a", r.completed_loop_a},
                {"completed_loop_b", r.completed_loop_b},
                {"fog_executed", r.fog_executed_tasks},
                {"cloud_executed", r.cloud_executed_tasks}};
  j["latency"] = {{"loop_a", {{"fog", stats_json(r.loop_a_fog)},
                              {"all", stats_json(r.loop_a_all)}}},
                  {"loop_b", {{"fog", stats_json(r.loop_b_fog)},
                              {"all", stats_json(r.loop_b_all)}}}};
  nlohmann::json per_node;
  for (const auto& [id, e] : r.node_energy_j) {
    per_node[std::to_string(id)] = e;
  }
  j["energy"] = {{"per_node_j", per_node},
                 {"fog_total_j", r.fog_energy_total_j},
                 {"cloud_j", r.cloud_energy_j}};
  j["decisions"] = {{"local", r.decisions_local},
                    {"neighbour", r.decisions_neighbour},
                    {"cloud", r.decisions_cloud},
                    {"placement_cloud_forwards", r.placement_cloud_forwards}};
  j["throughput"] = {{"window_ms", r.throughput_window_ms},
                     {"fog_completions_per_window", r.throughput_per_window}};
  return j.dump(2) + "\n";
}

std::string tasks_csv(const std::vector<LatencyRecord>& records) {
  std::string out =
      "task_id,type,loop,locus,origin_vehicle,primary_node,serving_node,"
      "emission_ms,sensor_to_vehicle_ms,vehicle_fog_transmission_ms,"
      "vehicle_fog_latency_ms,fog_fog_transmission_ms,fog_fog_latency_ms,"
      "fog_cloud_transmission_ms,fog_cloud_latency_ms,queue_wait_ms,"
      "processing_ms,vehicle_actuator_ms,total_ms\n";
  std::vector<const LatencyRecord*> sorted;
  sorted.reserve(records.size());
  for (const LatencyRecord& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const LatencyRecord* a, const LatencyRecord* b) {
              return a->task_id < b->task_id;
            });
  char buf[512];
  for (const LatencyRecord* r : sorted) {
    std::snprintf(
        buf, sizeof buf,
        "%lld,%s,%s,%s,%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,"
        "%.6f,%.6f,%.6f\n",
        static_cast<long long>(r->task_id), to_string(r->type),
        to_string(r->loop), to_string(r->locus), r->origin, r->primary_node,
        r->serving_node, to_ms(r->emission), to_ms(r->sensor_to_vehicle),
        to_ms(r->vf_transmission), to_ms(r->vf_propagation),
        to_ms(r->ff_transmission), to_ms(r->ff_propagation),
        to_ms(r->fc_transmission), to_ms(r->fc_link), to_ms(r->queue_wait),
        to_ms(r->processing), to_ms(r->vehicle_to_actuator), to_ms(r->total));
    out += buf;
  }
  return out;
}

}  // namespace fogsim
