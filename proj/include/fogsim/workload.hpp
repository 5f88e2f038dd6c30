#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fogsim/errors.hpp"
#include "fogsim/types.hpp"

namespace fogsim {

enum class TaskType : std::uint8_t {
  PriorityRequest,
  SensorNonUrgent,
  StatisticalTrafficData,
};
const char* to_string(TaskType t);

struct TaskSpec {
  TaskType type = TaskType::PriorityRequest;
  double cpu_length_mi = 0.0;    // work per task, million instructions
  double network_length = 0.0;   // transfer units per link traversal
  std::string target_module;
};

enum class Tier : std::uint8_t { Fog, Cloud };

struct AppModule {
  std::string id;
  double cpu_mips_per_vehicle = 0.0;
  double bw = 0.0;
  double ram = 0.0;
  Tier placement = Tier::Fog;
};

// Application model as a DAG of modules with data-dependency edges.
struct AppDag {
  std::vector<AppModule> modules;
  std::vector<std::pair<std::string, std::string>> edges;

  /// Throws ValidationError on unknown module references or cycles.
  void validate() const;
};

struct VehicleCfg {
  VehicleId id = -1;
  NodeId attached_node = kNoNode;
  SimTime emission_interval = 0;
  std::vector<TaskSpec> emitted_specs;  // emitted together at every tick
};

/// CPU demand one application module places on a node:
/// vehicles * rate * task length, with rate = 1 / transmission interval (ms).
double module_cpu_requirement(int vehicle_count, double rate_per_ms,
                              double task_cpu_mi);

struct NodeCapacity {
  double cpu_mips = 0.0;
  double ram = 0.0;
  double bw = 0.0;
};

// Total demand one module instance places on a node (cpu already scaled by
// the connected-vehicle count).
struct ModuleDemand {
  std::string id;
  double cpu_mips = 0.0;
  double ram = 0.0;
  double bw = 0.0;
};

struct PlacementVerdict {
  bool feasible = true;
  std::vector<std::string> violations;  // one entry per violated dimension
};

/// Feasible iff summed module demands fit the node capacity in every
/// dimension and the connected-vehicle count stays within the limit.
PlacementVerdict check_placement(const std::vector<ModuleDemand>& modules,
                                 const NodeCapacity& capacity,
                                 int vehicle_count, int max_vehicles);

/// Deterministic emission times strictly below `horizon`: at t = 0, interval,
/// 2*interval, ... the vehicle emits one task per entry of emitted_specs.
std::vector<std::pair<SimTime, TaskSpec>> emission_schedule(
    const VehicleCfg& v, SimTime horizon);

enum class Locus : std::uint8_t { PrimaryFog, NeighbourFog, Cloud };
const char* to_string(Locus l);

// Runtime record of one task travelling through the system. Times are -1
// until the corresponding point of the trace is reached. Leg fields hold the
// one-way delay of each link traversal so latency records can be rebuilt
// exactly from integer arithmetic.
struct Task {
  TaskId id = kNoTask;
  TaskType type = TaskType::PriorityRequest;
  double cpu_length_mi = 0.0;
  double network_length = 0.0;
  std::string target_module;
  VehicleId origin = -1;
  NodeId primary_node = kNoNode;
  NodeId serving_node = kNoNode;  // fog node that processed it, if any
  Locus locus = Locus::PrimaryFog;
  bool already_offloaded = false;

  SimTime emission = -1;
  SimTime arrival_primary = -1;
  SimTime arrival_serving = -1;
  SimTime service_start = -1;
  SimTime service_end = -1;
  SimTime loop_end = -1;
  SimTime predicted_wait = -1;  // queue estimate at local admission
  SimTime service_time = 0;     // processing duration at the serving site

  SimTime leg_sensor = 0;
  SimTime leg_actuator = 0;
  SimTime vf_transmission = 0;
  SimTime vf_latency = 0;
  SimTime ff_transmission = 0;
  SimTime ff_latency = 0;
  SimTime fc_transmission = 0;
  SimTime fc_latency = 0;
};

}  // namespace fogsim
