#include "fogsim/scenario.hpp"

namespace fogsim {

const char* paper_default_scenario_text() {
  static const char* kText = R"json({
  "version": 1,
  "name": "paper-default",
  "horizon_ms": 10000.0,
  "seed": 0,
  "latency_mode": "table",
  "topology": {
    "propagation_speed_mps": 300000000.0,
    "fog_fog_latency_ms": 2.0,
    "fog_cloud_latency_ms": 100.0,
    "sensor_vehicle_latency_ms": 1.0,
    "fog_nodes": [
      {"id": 0, "x": 0.0, "y": 0.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"},
      {"id": 1, "x": 1000.0, "y": 0.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"},
      {"id": 2, "x": 500.0, "y": -300.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"},
      {"id": 3, "x": 500.0, "y": -150.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"},
      {"id": 4, "x": 500.0, "y": 0.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"},
      {"id": 5, "x": 500.0, "y": 150.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"},
      {"id": 6, "x": 500.0, "y": 300.0, "coverage_radius_m": 600.0, "preset": "roadside-fog"}
    ]
  },
  "node_presets": {
    "roadside-fog": {
      "mips": 15100.0,
      "ram": 40000.0,
      "uplink_bw": 1000000.0,
      "downlink_bw": 1000000.0,
      "processing_units": 1,
      "idle_power_w": 83.4333,
      "busy_power_w": 107.339,
      "max_vehicles": 25
    }
  },
  "cloud": {
    "mips": 448000.0,
    "uplink_bw": 1000000.0,
    "downlink_bw": 1000000.0,
    "idle_power_w": 1648.0,
    "busy_power_w": 1332.0
  },
  "vehicles": {
    "uplink_bw": 1000.0,
    "downlink_bw": 1000.0,
    "emission_interval_ms": 3.0,
    "positions": [
      {"id": 0, "x": 0.0, "y": 0.0},
      {"id": 1, "x": 0.0, "y": 0.0},
      {"id": 2, "x": 0.0, "y": 0.0},
      {"id": 3, "x": 0.0, "y": 0.0},
      {"id": 4, "x": 0.0, "y": 0.0},
      {"id": 5, "x": 0.0, "y": 0.0},
      {"id": 6, "x": 0.0, "y": 0.0},
      {"id": 7, "x": 0.0, "y": 0.0},
      {"id": 8, "x": 0.0, "y": 0.0},
      {"id": 9, "x": 0.0, "y": 0.0},
      {"id": 10, "x": 0.0, "y": 0.0},
      {"id": 11, "x": 0.0, "y": 0.0},
      {"id": 12, "x": 0.0, "y": 0.0},
      {"id": 13, "x": 0.0, "y": 0.0},
      {"id": 14, "x": 0.0, "y": 0.0},
      {"id": 15, "x": 0.0, "y": 0.0},
      {"id": 16, "x": 0.0, "y": 0.0},
      {"id": 17, "x": 0.0, "y": 0.0},
      {"id": 18, "x": 0.0, "y": 0.0},
      {"id": 19, "x": 0.0, "y": 0.0},
      {"id": 20, "x": 0.0, "y": 0.0},
      {"id": 21, "x": 0.0, "y": 0.0},
      {"id": 22, "x": 0.0, "y": 0.0},
      {"id": 23, "x": 0.0, "y": 0.0},
      {"id": 24, "x": 0.0, "y": 0.0},
      {"id": 25, "x": 1000.0, "y": 0.0},
      {"id": 26, "x": 1000.0, "y": 0.0},
      {"id": 27, "x": 1000.0, "y": 0.0},
      {"id": 28, "x": 1000.0, "y": 0.0},
      {"id": 29, "x": 1000.0, "y": 0.0},
      {"id": 30, "x": 1000.0, "y": 0.0},
      {"id": 31, "x": 1000.0, "y": 0.0},
      {"id": 32, "x": 1000.0, "y": 0.0},
      {"id": 33, "x": 1000.0, "y": 0.0},
      {"id": 34, "x": 1000.0, "y": 0.0},
      {"id": 35, "x": 1000.0, "y": 0.0},
      {"id": 36, "x": 1000.0, "y": 0.0},
      {"id": 37, "x": 1000.0, "y": 0.0},
      {"id": 38, "x": 1000.0, "y": 0.0},
      {"id": 39, "x": 1000.0, "y": 0.0},
      {"id": 40, "x": 1000.0, "y": 0.0},
      {"id": 41, "x": 1000.0, "y": 0.0},
      {"id": 42, "x": 1000.0, "y": 0.0},
      {"id": 43, "x": 1000.0, "y": 0.0},
      {"id": 44, "x": 1000.0, "y": 0.0},
      {"id": 45, "x": 1000.0, "y": 0.0},
      {"id": 46, "x": 1000.0, "y": 0.0},
      {"id": 47, "x": 1000.0, "y": 0.0},
      {"id": 48, "x": 1000.0, "y": 0.0},
      {"id": 49, "x": 1000.0, "y": 0.0}
    ],
    "fog_latency_overrides_ms": {}
  },
  "workload": {
    "tasks": [
      {"type": "priority", "cpu_mi": 1000.0, "network_length": 1000.0, "module": "process-priority-tasks"},
      {"type": "sensor", "cpu_mi": 900.0, "network_length": 500.0, "module": "road-monitor"},
      {"type": "statistical", "cpu_mi": 300.0, "network_length": 500.0, "module": "global-road-monitor"}
    ],
    "modules": [
      {"id": "process-priority-tasks", "cpu_mips_per_vehicle": 333.33, "bw": 1000.0, "ram": 10.0, "tier": "fog"},
      {"id": "road-monitor", "cpu_mips_per_vehicle": 300.0, "bw": 1000.0, "ram": 10.0, "tier": "fog"},
      {"id": "global-road-monitor", "cpu_mips_per_vehicle": 99.99, "bw": 1000.0, "ram": 10.0, "tier": "cloud"}
    ],
    "dag_edges": [["road-monitor", "global-road-monitor"]],
    "placement": "pinned"
  },
  "policy": {
    "offloading_threshold_ms": "infinite",
    "dec_enabled": false,
    "cloud_compare_includes_processing": true,
    "controller": "event-driven",
    "controller_period_ms": 0.0,
    "boot_delay_ms": 0.0,
    "boot_energy_j": 0.0
  }
}
)json";
  return kText;
}

Scenario paper_default_scenario() {
  return parse_scenario_text(paper_default_scenario_text());
}

}  // namespace fogsim
