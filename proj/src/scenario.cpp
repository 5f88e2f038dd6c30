#include "fogsim/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fogsim {

using nlohmann::json;

namespace {

const json& member(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(path + ": missing required field '" + key + "'");
  }
  return *it;
}

double require_num(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number()) {
    throw ValidationError(path + "." + key + ": expected a number");
  }
  return v.get<double>();
}

double optional_num(const json& j, const char* key, double def,
                    const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_number()) {
    throw ValidationError(path + "." + key + ": expected a number");
  }
  return it->get<double>();
}

int require_int(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number_integer()) {
    throw ValidationError(path + "." + key + ": expected an integer");
  }
  return v.get<int>();
}

std::string require_str(const json& j, const char* key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_string()) {
    throw ValidationError(path + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

bool optional_bool(const json& j, const char* key, bool def, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_boolean()) {
    throw ValidationError(path + "." + key + ": expected a boolean");
  }
  return it->get<bool>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& path, bool lenient,
                std::vector<std::string>* warnings) {
  if (!j.is_object()) {
    throw ValidationError(path + ": expected an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (known) continue;
    std::string msg = path + ": unknown field '" + it.key() + "'";
    if (lenient) {
      if (warnings) warnings->push_back(msg + " (ignored)");
    } else {
      throw ValidationError(msg);
    }
  }
}

TaskType parse_task_type(const std::string& s, const std::string& path) {
  if (s == "priority") return TaskType::PriorityRequest;
  if (s == "sensor") return TaskType::SensorNonUrgent;
  if (s == "statistical") return TaskType::StatisticalTrafficData;
  throw ValidationError(path + ": unknown task type '" + s + "'");
}

SimTime parse_threshold(const json& policy, const std::string& path) {
  const json& v = member(policy, "offloading_threshold_ms", path);
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "infinite" || s == "inf") return kTimeNever;
    throw ValidationError(path + ".offloading_threshold_ms: expected a positive "
                          "number or \"infinite\", got '" + s + "'");
  }
  if (!v.is_number()) {
    throw ValidationError(path + ".offloading_threshold_ms: expected a positive "
                          "number or \"infinite\"");
  }
  double ms = v.get<double>();
  if (!(ms > 0.0)) {
    throw ValidationError(path + ".offloading_threshold_ms: must be positive");
  }
  return from_ms(ms);
}

}  // namespace

const TaskSpec& Scenario::spec_for(TaskType t) const {
  for (const TaskSpec& s : task_specs) {
    if (s.type == t) return s;
  }
  throw ValidationError(std::string("no task spec for type ") + to_string(t));
}

const NodePreset& Scenario::preset_for(const FogNodeConfig& n) const {
  auto it = node_presets.find(n.preset);
  if (it == node_presets.end()) {
    throw ValidationError("fog node " + std::to_string(n.id) +
                          ": unknown node preset '" + n.preset + "'");
  }
  return it->second;
}

const AppModule& Scenario::module_by_id(const std::string& id) const {
  for (const AppModule& m : modules) {
    if (m.id == id) return m;
  }
  throw ValidationError("unknown application module '" + id + "'");
}

double Scenario::vehicle_fog_latency_ms(VehicleId v) const {
  auto it = vehicle_latency_overrides_ms.find(v);
  if (it != vehicle_latency_overrides_ms.end()) return it->second;
  return 1.0 + static_cast<double>(v % 5);
}

Scenario parse_scenario_text(const std::string& text, bool lenient,
                             std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }

  Scenario s;
  check_keys(j, {"version", "name", "horizon_ms", "seed", "latency_mode",
                 "topology", "node_presets", "cloud", "vehicles", "workload",
                 "policy"},
             "scenario", lenient, warnings);

  s.version = require_int(j, "version", "scenario");
  if (s.version != 1) {
    throw ValidationError("scenario.version: unsupported version " +
                          std::to_string(s.version));
  }
  s.name = require_str(j, "name", "scenario");
  double horizon_ms = require_num(j, "horizon_ms", "scenario");
  if (horizon_ms < 0.0) throw ValidationError("scenario.horizon_ms: must be >= 0");
  s.horizon = from_ms(horizon_ms);
  s.seed = static_cast<std::uint64_t>(optional_num(j, "seed", 0.0, "scenario"));

  std::string mode = require_str(j, "latency_mode", "scenario");
  if (mode == "table") {
    s.latency_mode = LatencyMode::TableLatency;
  } else if (mode == "geometric") {
    s.latency_mode = LatencyMode::GeometricPd;
  } else {
    throw ValidationError("scenario.latency_mode: expected 'table' or 'geometric'");
  }

  const json& topo = member(j, "topology", "scenario");
  check_keys(topo, {"propagation_speed_mps", "fog_fog_latency_ms",
                    "fog_cloud_latency_ms", "sensor_vehicle_latency_ms",
                    "fog_nodes"},
             "topology", lenient, warnings);
  s.propagation_speed_mps =
      optional_num(topo, "propagation_speed_mps", kSpeedOfLightMps, "topology");
  if (!(s.propagation_speed_mps > 0.0)) {
    throw ValidationError("topology.propagation_speed_mps: must be positive");
  }
  s.fog_fog_latency_ms = require_num(topo, "fog_fog_latency_ms", "topology");
  s.fog_cloud_latency_ms = require_num(topo, "fog_cloud_latency_ms", "topology");
  s.sensor_vehicle_latency_ms =
      require_num(topo, "sensor_vehicle_latency_ms", "topology");

  const json& nodes = member(topo, "fog_nodes", "topology");
  if (!nodes.is_array() || nodes.empty()) {
    throw ValidationError("topology.fog_nodes: expected a non-empty array");
  }
  for (const json& n : nodes) {
    std::string path = "topology.fog_nodes[" + std::to_string(s.fog_nodes.size()) + "]";
    check_keys(n, {"id", "x", "y", "coverage_radius_m", "preset"}, path, lenient,
               warnings);
    FogNodeConfig cfg;
    cfg.id = static_cast<NodeId>(require_int(n, "id", path));
    cfg.pos = {require_num(n, "x", path), require_num(n, "y", path)};
    cfg.coverage_radius = require_num(n, "coverage_radius_m", path);
    if (!(cfg.coverage_radius > 0.0)) {
      throw ValidationError(path + ".coverage_radius_m: must be positive");
    }
    cfg.preset = require_str(n, "preset", path);
    s.fog_nodes.push_back(cfg);
  }

  const json& presets = member(j, "node_presets", "scenario");
  if (!presets.is_object()) {
    throw ValidationError("node_presets: expected an object");
  }
  for (auto it = presets.begin(); it != presets.end(); ++it) {
    std::string path = "node_presets." + it.key();
    check_keys(*it, {"mips", "ram", "uplink_bw", "downlink_bw",
                     "processing_units", "idle_power_w", "busy_power_w",
                     "max_vehicles"},
               path, lenient, warnings);
    NodePreset p;
    p.mips = require_num(*it, "mips", path);
    p.ram = require_num(*it, "ram", path);
    p.bw_uplink = require_num(*it, "uplink_bw", path);
    p.bw_downlink = require_num(*it, "downlink_bw", path);
    p.processing_units = require_int(*it, "processing_units", path);
    p.idle_power_w = require_num(*it, "idle_power_w", path);
    p.busy_power_w = require_num(*it, "busy_power_w", path);
    p.max_vehicles = require_int(*it, "max_vehicles", path);
    if (!(p.mips > 0.0)) throw ValidationError(path + ".mips: must be positive");
    if (p.processing_units < 1) {
      throw ValidationError(path + ".processing_units: must be >= 1");
    }
    if (!(p.bw_uplink > 0.0) || !(p.bw_downlink > 0.0)) {
      throw ValidationError(path + ": bandwidths must be positive");
    }
    s.node_presets[it.key()] = p;
  }
  for (const FogNodeConfig& n : s.fog_nodes) {
    s.preset_for(n);  // unknown preset names fail here
  }

  const json& cloud = member(j, "cloud", "scenario");
  check_keys(cloud, {"mips", "uplink_bw", "downlink_bw", "idle_power_w",
                     "busy_power_w"},
             "cloud", lenient, warnings);
  s.cloud.mips = require_num(cloud, "mips", "cloud");
  s.cloud.bw_uplink = require_num(cloud, "uplink_bw", "cloud");
  s.cloud.bw_downlink = require_num(cloud, "downlink_bw", "cloud");
  s.cloud.idle_power_w = require_num(cloud, "idle_power_w", "cloud");
  s.cloud.busy_power_w = require_num(cloud, "busy_power_w", "cloud");
  if (!(s.cloud.mips > 0.0)) throw ValidationError("cloud.mips: must be positive");

  const json& veh = member(j, "vehicles", "scenario");
  check_keys(veh, {"uplink_bw", "downlink_bw", "emission_interval_ms",
                   "positions", "fog_latency_overrides_ms"},
             "vehicles", lenient, warnings);
  s.vehicle_defaults.bw_uplink = require_num(veh, "uplink_bw", "vehicles");
  s.vehicle_defaults.bw_downlink = require_num(veh, "downlink_bw", "vehicles");
  if (!(s.vehicle_defaults.bw_uplink > 0.0)) {
    throw ValidationError("vehicles.uplink_bw: must be positive");
  }
  double interval_ms = require_num(veh, "emission_interval_ms", "vehicles");
  if (!(interval_ms > 0.0)) {
    throw ValidationError("vehicles.emission_interval_ms: must be positive");
  }
  s.emission_interval = from_ms(interval_ms);
  const json& positions = member(veh, "positions", "vehicles");
  if (!positions.is_array()) {
    throw ValidationError("vehicles.positions: expected an array");
  }
  for (const json& p : positions) {
    std::string path = "vehicles.positions[" + std::to_string(s.vehicle_positions.size()) + "]";
    check_keys(p, {"id", "x", "y"}, path, lenient, warnings);
    VehicleSite site;
    site.id = static_cast<VehicleId>(require_int(p, "id", path));
    site.pos = {require_num(p, "x", path), require_num(p, "y", path)};
    s.vehicle_positions.push_back(site);
  }
  if (auto it = veh.find("fog_latency_overrides_ms"); it != veh.end()) {
    if (!it->is_object()) {
      throw ValidationError("vehicles.fog_latency_overrides_ms: expected an object");
    }
    for (auto o = it->begin(); o != it->end(); ++o) {
      VehicleId vid;
      try {
        vid = static_cast<VehicleId>(std::stol(o.key()));
      } catch (const std::exception&) {
        throw ValidationError("vehicles.fog_latency_overrides_ms: key '" + o.key() +
                              "' is not a vehicle id");
      }
      if (!o->is_number()) {
        throw ValidationError("vehicles.fog_latency_overrides_ms." + o.key() +
                              ": expected a number");
      }
      s.vehicle_latency_overrides_ms[vid] = o->get<double>();
    }
  }

  const json& wl = member(j, "workload", "scenario");
  check_keys(wl, {"tasks", "modules", "dag_edges", "placement"}, "workload",
             lenient, warnings);
  const json& tasks = member(wl, "tasks", "workload");
  if (!tasks.is_array() || tasks.empty()) {
    throw ValidationError("workload.tasks: expected a non-empty array");
  }
  std::set<TaskType> seen_types;
  for (const json& t : tasks) {
    std::string path = "workload.tasks[" + std::to_string(s.task_specs.size()) + "]";
    check_keys(t, {"type", "cpu_mi", "network_length", "module"}, path, lenient,
               warnings);
    TaskSpec spec;
    spec.type = parse_task_type(require_str(t, "type", path), path);
    spec.cpu_length_mi = require_num(t, "cpu_mi", path);
    spec.network_length = require_num(t, "network_length", path);
    spec.target_module = require_str(t, "module", path);
    if (!(spec.cpu_length_mi > 0.0)) {
      throw ValidationError(path + ".cpu_mi: must be positive");
    }
    if (!(spec.network_length > 0.0)) {
      throw ValidationError(path + ".network_length: must be positive");
    }
    if (!seen_types.insert(spec.type).second) {
      throw ValidationError(path + ": duplicate task type");
    }
    s.task_specs.push_back(spec);
  }
  const json& mods = member(wl, "modules", "workload");
  if (!mods.is_array()) throw ValidationError("workload.modules: expected an array");
  for (const json& m : mods) {
    std::string path = "workload.modules[" + std::to_string(s.modules.size()) + "]";
    check_keys(m, {"id", "cpu_mips_per_vehicle", "bw", "ram", "tier"}, path,
               lenient, warnings);
    AppModule mod;
    mod.id = require_str(m, "id", path);
    mod.cpu_mips_per_vehicle = require_num(m, "cpu_mips_per_vehicle", path);
    mod.bw = require_num(m, "bw", path);
    mod.ram = require_num(m, "ram", path);
    std::string tier = require_str(m, "tier", path);
    if (tier == "fog") {
      mod.placement = Tier::Fog;
    } else if (tier == "cloud") {
      mod.placement = Tier::Cloud;
    } else {
      throw ValidationError(path + ".tier: expected 'fog' or 'cloud'");
    }
    s.modules.push_back(mod);
  }
  if (auto it = wl.find("dag_edges"); it != wl.end()) {
    if (!it->is_array()) throw ValidationError("workload.dag_edges: expected an array");
    for (const json& e : *it) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw ValidationError("workload.dag_edges: each edge must be [from, to]");
      }
      s.dag_edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  std::string placement = require_str(wl, "placement", "workload");
  if (placement == "pinned") {
    s.placement = PlacementMode::Pinned;
  } else if (placement == "auto") {
    s.placement = PlacementMode::Auto;
  } else {
    throw ValidationError("workload.placement: expected 'pinned' or 'auto'");
  }

  AppDag dag{s.modules, s.dag_edges};
  dag.validate();
  for (const TaskSpec& spec : s.task_specs) {
    s.module_by_id(spec.target_module);  // unknown target modules fail here
  }

  const json& policy = member(j, "policy", "scenario");
  check_keys(policy, {"offloading_threshold_ms", "dec_enabled",
                      "cloud_compare_includes_processing", "controller",
                      "controller_period_ms", "boot_delay_ms", "boot_energy_j"},
             "policy", lenient, warnings);
  s.policy.offloading_threshold = parse_threshold(policy, "policy");
  s.policy.dec_enabled = optional_bool(policy, "dec_enabled", false, "policy");
  s.policy.cloud_compare_includes_processing =
      optional_bool(policy, "cloud_compare_includes_processing", true, "policy");
  std::string controller =
      policy.contains("controller") ? require_str(policy, "controller", "policy")
                                    : "event-driven";
  if (controller == "event-driven") {
    s.policy.controller = PolicyConfig::Controller::EventDriven;
  } else if (controller == "periodic") {
    s.policy.controller = PolicyConfig::Controller::Periodic;
  } else {
    throw ValidationError("policy.controller: expected 'event-driven' or 'periodic'");
  }
  s.policy.controller_period =
      from_ms(optional_num(policy, "controller_period_ms", 0.0, "policy"));
  if (s.policy.controller == PolicyConfig::Controller::Periodic &&
      s.policy.controller_period <= 0) {
    throw ValidationError("policy.controller_period_ms: must be positive in periodic mode");
  }
  double boot_delay_ms = optional_num(policy, "boot_delay_ms", 0.0, "policy");
  if (boot_delay_ms < 0.0) {
    throw ValidationError("policy.boot_delay_ms: must be >= 0");
  }
  s.policy.boot_delay = from_ms(boot_delay_ms);
  s.policy.boot_energy_j = optional_num(policy, "boot_energy_j", 0.0, "policy");
  if (s.policy.boot_energy_j < 0.0) {
    throw ValidationError("policy.boot_energy_j: must be >= 0");
  }

  // Vehicle ids must be unique; Topology re-validates together with coverage.
  std::set<VehicleId> vids;
  for (const VehicleSite& v : s.vehicle_positions) {
    if (!vids.insert(v.id).second) {
      throw ValidationError("vehicles.positions: duplicate vehicle id " +
                            std::to_string(v.id));
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path, bool lenient,
                       std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), lenient, warnings);
}

std::string save_scenario_text(const Scenario& s) {
  json j;
  j["version"] = s.version;
  j["name"] = s.name;
  j["horizon_ms"] = to_ms(s.horizon);
  j["seed"] = s.seed;
  j["latency_mode"] =
      s.latency_mode == LatencyMode::TableLatency ? "table" : "geometric";

  json topo;
  topo["propagation_speed_mps"] = s.propagation_speed_mps;
  topo["fog_fog_latency_ms"] = s.fog_fog_latency_ms;
  topo["fog_cloud_latency_ms"] = s.fog_cloud_latency_ms;
  topo["sensor_vehicle_latency_ms"] = s.sensor_vehicle_latency_ms;
  json nodes = json::array();
  for (const FogNodeConfig& n : s.fog_nodes) {
    nodes.push_back({{"id", n.id},
                     {"x", n.pos.x},
                     {"y", n.pos.y},
                     {"coverage_radius_m", n.coverage_radius},
                     {"preset", n.preset}});
  }
  topo["fog_nodes"] = nodes;
  j["topology"] = topo;

  json presets;
  for (const auto& [name, p] : s.node_presets) {
    presets[name] = {{"mips", p.mips},
                     {"ram", p.ram},
                     {"uplink_bw", p.bw_uplink},
                     {"downlink_bw", p.bw_downlink},
                     {"processing_units", p.processing_units},
                     {"idle_power_w", p.idle_power_w},
                     {"busy_power_w", p.busy_power_w},
                     {"max_vehicles", p.max_vehicles}};
  }
  j["node_presets"] = presets;

  j["cloud"] = {{"mips", s.cloud.mips},
                {"uplink_bw", s.cloud.bw_uplink},
                {"downlink_bw", s.cloud.bw_downlink},
                {"idle_power_w", s.cloud.idle_power_w},
                {"busy_power_w", s.cloud.busy_power_w}};

  json veh;
  veh["uplink_bw"] = s.vehicle_defaults.bw_uplink;
  veh["downlink_bw"] = s.vehicle_defaults.bw_downlink;
  veh["emission_interval_ms"] = to_ms(s.emission_interval);
  json positions = json::array();
  for (const VehicleSite& v : s.vehicle_positions) {
    positions.push_back({{"id", v.id}, {"x", v.pos.x}, {"y", v.pos.y}});
  }
  veh["positions"] = positions;
  json overrides = json::object();
  for (const auto& [vid, ms] : s.vehicle_latency_overrides_ms) {
    overrides[std::to_string(vid)] = ms;
  }
  veh["fog_latency_overrides_ms"] = overrides;
  j["vehicles"] = veh;

  json wl;
  json tasks = json::array();
  for (const TaskSpec& t : s.task_specs) {
    tasks.push_back({{"type", to_string(t.type)},
                     {"cpu_mi", t.cpu_length_mi},
                     {"network_length", t.network_length},
                     {"module", t.target_module}});
  }
  wl["tasks"] = tasks;
  json mods = json::array();
  for (const AppModule& m : s.modules) {
    mods.push_back({{"id", m.id},
                    {"cpu_mips_per_vehicle", m.cpu_mips_per_vehicle},
                    {"bw", m.bw},
                    {"ram", m.ram},
                    {"tier", m.placement == Tier::Fog ? "fog" : "cloud"}});
  }
  wl["modules"] = mods;
  json edges = json::array();
  for (const auto& [from, to] : s.dag_edges) {
    edges.push_back({from, to});
  }
  wl["dag_edges"] = edges;
  wl["placement"] = s.placement == PlacementMode::Pinned ? "pinned" : "auto";
  j["workload"] = wl;

  json policy;
  if (s.policy.offloading_threshold == kTimeNever) {
    policy["offloading_threshold_ms"] = "infinite";
  } else {
    policy["offloading_threshold_ms"] = to_ms(s.policy.offloading_threshold);
  }
  policy["dec_enabled"] = s.policy.dec_enabled;
  policy["cloud_compare_includes_processing"] =
      s.policy.cloud_compare_includes_processing;
  policy["controller"] =
      s.policy.controller == PolicyConfig::Controller::EventDriven ? "event-driven"
                                                                   : "periodic";
  policy["controller_period_ms"] = to_ms(s.policy.controller_period);
  policy["boot_delay_ms"] = to_ms(s.policy.boot_delay);
  policy["boot_energy_j"] = s.policy.boot_energy_j;
  j["policy"] = policy;

  return j.dump(2) + "\n";
}

Topology build_topology(const Scenario& s) {
  std::vector<FogSite> fogs;
  for (const FogNodeConfig& n : s.fog_nodes) {
    fogs.push_back({n.id, n.pos, n.coverage_radius});
  }
  LinkLatencyTable table;
  table.fog_cloud_ms = s.fog_cloud_latency_ms;
  table.fog_fog_ms = s.fog_fog_latency_ms;
  table.sensor_vehicle_ms = s.sensor_vehicle_latency_ms;
  for (const VehicleSite& v : s.vehicle_positions) {
    table.vehicle_fog_ms[v.id] = s.vehicle_fog_latency_ms(v.id);
  }
  return Topology(fogs, s.vehicle_positions, table, s.propagation_speed_mps,
                  s.latency_mode);
}

std::vector<FogNode> build_fog_nodes(const Scenario& s) {
  std::vector<FogNode> out;
  for (const FogNodeConfig& cfg : s.fog_nodes) {
    const NodePreset& p = s.preset_for(cfg);
    FogNode n;
    n.id = cfg.id;
    n.mips = p.mips;
    n.processing_units = p.processing_units;
    n.ram = p.ram;
    n.bw_uplink = p.bw_uplink;
    n.bw_downlink = p.bw_downlink;
    n.idle_power_w = p.idle_power_w;
    n.busy_power_w = p.busy_power_w;
    n.max_vehicles = p.max_vehicles;
    n.offloading_threshold = s.policy.offloading_threshold;
    if (s.policy.dec_enabled) {
      n.power = PowerState::Off;
      n.ledger = {0.0, 0, 0.0};
    } else {
      n.power = PowerState::On;
      n.ledger = {0.0, 0, n.idle_power_w};
    }
    out.push_back(n);
  }
  return out;
}

std::vector<VehicleCfg> build_vehicles(const Scenario& s, const Topology& topo) {
  std::vector<TaskSpec> emitted;
  for (const TaskSpec& spec : s.task_specs) {
    if (spec.type != TaskType::StatisticalTrafficData) emitted.push_back(spec);
  }
  std::vector<VehicleCfg> out;
  for (const VehicleSite& site : s.vehicle_positions) {
    VehicleCfg v;
    v.id = site.id;
    v.attached_node = topo.nearest_fog_node(site.id);
    v.emission_interval = s.emission_interval;
    v.emitted_specs = emitted;
    out.push_back(v);
  }
  return out;
}

PlacementReport resolve_placement(const Scenario& s,
                                  const std::vector<VehicleCfg>& vehicles) {
  PlacementReport report;
  double rate_per_ms = 1.0 / to_ms(s.emission_interval);
  for (const FogNodeConfig& cfg : s.fog_nodes) {
    const NodePreset& preset = s.preset_for(cfg);
    int nv = 0;
    for (const VehicleCfg& v : vehicles) {
      if (v.attached_node == cfg.id) ++nv;
    }
    std::vector<ModuleDemand> demands;
    for (const AppModule& m : s.modules) {
      if (m.placement != Tier::Fog) continue;
      double cpu = 0.0;
      for (const TaskSpec& t : s.task_specs) {
        if (t.target_module == m.id) {
          cpu += module_cpu_requirement(nv, rate_per_ms, t.cpu_length_mi);
        }
      }
      demands.push_back({m.id, cpu, m.ram, m.bw});
    }
    NodeCapacity cap{preset.mips, preset.ram, preset.bw_uplink};
    NodePlacement np;
    np.node = cfg.id;
    np.vehicle_count = nv;
    np.verdict = check_placement(demands, cap, nv, preset.max_vehicles);
    if (!np.verdict.feasible) {
      if (s.placement == PlacementMode::Auto) {
        // Relocate fog modules to the cloud, last declared first, until the
        // remaining set fits. Vehicle-count violations cannot be fixed here.
        while (!demands.empty()) {
          PlacementVerdict v = check_placement(demands, cap, nv, preset.max_vehicles);
          bool capacity_ok = true;
          for (const std::string& viol : v.violations) {
            if (viol.rfind("vehicle count", 0) != 0) capacity_ok = false;
          }
          if (capacity_ok) break;
          np.relocated_modules.push_back(demands.back().id);
          demands.pop_back();
        }
        for (const std::string& m : np.relocated_modules) {
          report.warnings.push_back("node " + std::to_string(cfg.id) +
                                    ": module '" + m +
                                    "' relocated to the cloud (placement infeasible)");
        }
      } else {
        std::string what;
        for (const std::string& v : np.verdict.violations) {
          if (!what.empty()) what += "; ";
          what += v;
        }
        report.warnings.push_back("node " + std::to_string(cfg.id) +
                                  ": fog module placement infeasible (" + what +
                                  "); keeping configured placement");
      }
    }
    report.nodes.push_back(std::move(np));
  }
  return report;
}

}  // namespace fogsim
