#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/node.hpp"
#include "fogsim/topology.hpp"
#include "fogsim/types.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

struct NodePreset {
  double mips = 0.0;
  double ram = 0.0;
  double bw_uplink = 0.0;
  double bw_downlink = 0.0;
  int processing_units = 1;
  double idle_power_w = 0.0;
  double busy_power_w = 0.0;
  int max_vehicles = 0;
};

struct FogNodeConfig {
  NodeId id = kNoNode;
  Position pos;
  double coverage_radius = 0.0;
  std::string preset;
};

struct CloudConfig {
  double mips = 0.0;
  double bw_uplink = 0.0;
  double bw_downlink = 0.0;
  double idle_power_w = 0.0;
  double busy_power_w = 0.0;
};

struct VehicleDefaults {
  double bw_uplink = 0.0;
  double bw_downlink = 0.0;
};

struct PolicyConfig {
  SimTime offloading_threshold = kTimeNever;  // kTimeNever = "infinite"
  bool dec_enabled = false;
  bool cloud_compare_includes_processing = true;
  enum class Controller : std::uint8_t { EventDriven, Periodic };
  Controller controller = Controller::EventDriven;
  SimTime controller_period = 0;
  SimTime boot_delay = 0;
  double boot_energy_j = 0.0;
};

enum class PlacementMode : std::uint8_t { Pinned, Auto };

// Full experiment configuration. Parsed from JSON; see README for the schema.
struct Scenario {
  int version = 1;
  std::string name;
  SimTime horizon = 0;
  std::uint64_t seed = 0;  // reserved for stochastic extensions

  LatencyMode latency_mode = LatencyMode::TableLatency;
  double propagation_speed_mps = kSpeedOfLightMps;
  double fog_fog_latency_ms = 2.0;
  double fog_cloud_latency_ms = 100.0;
  double sensor_vehicle_latency_ms = 1.0;
  std::vector<FogNodeConfig> fog_nodes;
  std::map<std::string, NodePreset> node_presets;
  CloudConfig cloud;

  VehicleDefaults vehicle_defaults;
  std::vector<VehicleSite> vehicle_positions;
  std::map<VehicleId, double> vehicle_latency_overrides_ms;
  SimTime emission_interval = 0;

  std::vector<TaskSpec> task_specs;  // one per task type
  std::vector<AppModule> modules;
  std::vector<std::pair<std::string, std::string>> dag_edges;
  PlacementMode placement = PlacementMode::Pinned;

  PolicyConfig policy;

  const TaskSpec& spec_for(TaskType t) const;
  const NodePreset& preset_for(const FogNodeConfig& n) const;
  const AppModule& module_by_id(const std::string& id) const;

  /// Vehicle-fog link latency: explicit override, else 1 + (id mod 5) ms.
  double vehicle_fog_latency_ms(VehicleId v) const;
};

/// Parses and validates a scenario. Unknown keys are rejected unless
/// `lenient`, in which case they are reported through `warnings`. Validation
/// problems throw ValidationError; malformed JSON throws ValidationError with
/// the parser diagnostics.
Scenario parse_scenario_text(const std::string& text, bool lenient = false,
                             std::vector<std::string>* warnings = nullptr);
Scenario load_scenario(const std::string& path, bool lenient = false,
                       std::vector<std::string>* warnings = nullptr);

/// Serialises a scenario back to JSON. load(save(s)) reproduces s.
std::string save_scenario_text(const Scenario& s);

/// The bundled desk-scale default: one cloud, seven fog nodes, fifty vehicles
/// attached 25+25 to two of them, 3 ms emission interval.
const char* paper_default_scenario_text();
Scenario paper_default_scenario();

// Derived runtime structures.
Topology build_topology(const Scenario& s);
std::vector<FogNode> build_fog_nodes(const Scenario& s);
std::vector<VehicleCfg> build_vehicles(const Scenario& s, const Topology& topo);

struct NodePlacement {
  NodeId node = kNoNode;
  int vehicle_count = 0;
  PlacementVerdict verdict;
  std::vector<std::string> relocated_modules;  // moved to the cloud (auto mode)
};

struct PlacementReport {
  std::vector<NodePlacement> nodes;
  std::vector<std::string> warnings;
};

/// Checks fog-tier module placement per node. In Auto mode infeasible
/// placements relocate the node's fog modules to the cloud; in Pinned mode
/// the configured placement stands and a warning is recorded.
PlacementReport resolve_placement(const Scenario& s,
                                  const std::vector<VehicleCfg>& vehicles);

}  // namespace fogsim
