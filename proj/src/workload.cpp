#include "fogsim/workload.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace fogsim {

const char* to_string(TaskType t) {
  switch (t) {
    case TaskType::PriorityRequest: return "priority";
    case TaskType::SensorNonUrgent: return "sensor";
    case TaskType::StatisticalTrafficData: return "statistical";
  }
  return "?";
}

const char* to_string(Locus l) {
  switch (l) {
    case Locus::PrimaryFog: return "primary-fog";
    case Locus::NeighbourFog: return "neighbour-fog";
    case Locus::Cloud: return "cloud";
  }
  return "?";
}

void AppDag::validate() const {
  std::set<std::string> ids;
  for (const AppModule& m : modules) {
    if (!ids.insert(m.id).second) {
      throw ValidationError("duplicate application module '" + m.id + "'");
    }
    if (m.cpu_mips_per_vehicle < 0 || m.bw < 0 || m.ram < 0) {
      throw ValidationError("module '" + m.id + "': requirements must be non-negative");
    }
  }
  std::map<std::string, int> indegree;
  std::map<std::string, std::vector<std::string>> out;
  for (const AppModule& m : modules) indegree[m.id] = 0;
  for (const auto& [from, to] : edges) {
    if (!ids.count(from) || !ids.count(to)) {
      throw ValidationError("dag edge references unknown module: " + from + " -> " + to);
    }
    out[from].push_back(to);
    ++indegree[to];
  }
  // Kahn's algorithm; anything left over sits on a cycle.
  std::vector<std::string> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push_back(id);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    std::string m = ready.back();
    ready.pop_back();
    ++visited;
    for (const std::string& n : out[m]) {
      if (--indegree[n] == 0) ready.push_back(n);
    }
  }
  if (visited != modules.size()) {
    throw ValidationError("application module graph contains a cycle");
  }
}

double module_cpu_requirement(int vehicle_count, double rate_per_ms,
                              double task_cpu_mi) {
  if (vehicle_count < 0) {
    throw ValidationError("vehicle count must be non-negative");
  }
  if (rate_per_ms <= 0.0) {
    throw ValidationError("emission rate must be positive");
  }
  return vehicle_count * rate_per_ms * task_cpu_mi;
}

PlacementVerdict check_placement(const std::vector<ModuleDemand>& modules,
                                 const NodeCapacity& capacity,
                                 int vehicle_count, int max_vehicles) {
  double cpu = 0.0, ram = 0.0, bw = 0.0;
  for (const ModuleDemand& m : modules) {
    cpu += m.cpu_mips;
    ram += m.ram;
    bw += m.bw;
  }
  PlacementVerdict v;
  char buf[128];
  if (cpu > capacity.cpu_mips) {
    std::snprintf(buf, sizeof buf, "cpu exceeded by %.2f MIPS", cpu - capacity.cpu_mips);
    v.violations.emplace_back(buf);
  }
  if (ram > capacity.ram) {
    std::snprintf(buf, sizeof buf, "ram exceeded by %.2f", ram - capacity.ram);
    v.violations.emplace_back(buf);
  }
  if (bw > capacity.bw) {
    std::snprintf(buf, sizeof buf, "bandwidth exceeded by %.2f", bw - capacity.bw);
    v.violations.emplace_back(buf);
  }
  if (vehicle_count > max_vehicles) {
    std::snprintf(buf, sizeof buf, "vehicle count %d > %d", vehicle_count, max_vehicles);
    v.violations.emplace_back(buf);
  }
  v.feasible = v.violations.empty();
  return v;
}

std::vector<std::pair<SimTime, TaskSpec>> emission_schedule(const VehicleCfg& v,
                                                            SimTime horizon) {
  if (v.emission_interval <= 0) {
    throw ValidationError("vehicle " + std::to_string(v.id) +
                          ": emission interval must be positive");
  }
  std::vector<std::pair<SimTime, TaskSpec>> out;
  for (SimTime t = 0; t < horizon; t += v.emission_interval) {
    for (const TaskSpec& spec : v.emitted_specs) {
      out.emplace_back(t, spec);
    }
  }
  return out;
}

}  // namespace fogsim
