#pragma once

#include <map>
#include <vector>

#include "fogsim/errors.hpp"
#include "fogsim/types.hpp"

namespace fogsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance in metres.
double distance(const Position& a, const Position& b);

/// Signal travel time over `d` metres at `ps` metres/second, in milliseconds.
/// Rejects non-positive propagation speeds.
double propagation_delay_ms(double d, double ps);

inline constexpr double kSpeedOfLightMps = 3e8;

enum class LinkKind { VehicleToFog, FogToFog, FogToCloud, SensorToVehicle };

// TableLatency uses the configured per-link latencies; GeometricPd derives
// vehicle-fog and fog-fog latency from positions and the propagation speed.
enum class LatencyMode { TableLatency, GeometricPd };

struct FogSite {
  NodeId id = kNoNode;
  Position pos;
  double coverage_radius = 0.0;
};

struct VehicleSite {
  VehicleId id = -1;
  Position pos;
};

struct LinkLatencyTable {
  double fog_cloud_ms = 100.0;
  double fog_fog_ms = 2.0;
  double sensor_vehicle_ms = 1.0;
  std::map<VehicleId, double> vehicle_fog_ms;  // one entry per vehicle
};

// Static network model: positions, coverage, neighbour sets and link
// latencies. Immutable after construction, safe to share across threads.
class Topology {
 public:
  Topology(std::vector<FogSite> fogs, std::vector<VehicleSite> vehicles,
           LinkLatencyTable table, double propagation_speed_mps,
           LatencyMode mode);

  /// Nearest fog node whose coverage radius contains the vehicle; ties go to
  /// the lowest node id. Throws NoCoverageError when no node covers it.
  NodeId nearest_fog_node(VehicleId v) const;

  /// Fog nodes g != f within f's own coverage radius, ascending by id.
  const std::vector<NodeId>& neighbours(NodeId f) const;

  double vehicle_fog_latency_ms(VehicleId v, NodeId f) const;
  double fog_fog_latency_ms(NodeId a, NodeId b) const;
  double fog_cloud_latency_ms() const { return table_.fog_cloud_ms; }
  double sensor_vehicle_latency_ms() const { return table_.sensor_vehicle_ms; }

  /// Generic dispatch over the four link kinds; `a`/`b` are vehicle or node
  /// ids as the kind requires. Throws on an unknown kind.
  double link_latency_ms(LinkKind kind, std::int64_t a, std::int64_t b) const;

  const std::vector<FogSite>& fog_sites() const { return fogs_; }
  const std::vector<VehicleSite>& vehicle_sites() const { return vehicles_; }
  const FogSite& fog_site(NodeId id) const;
  const VehicleSite& vehicle_site(VehicleId id) const;
  LatencyMode latency_mode() const { return mode_; }
  double propagation_speed() const { return propagation_speed_; }

 private:
  std::vector<FogSite> fogs_;            // sorted by id
  std::vector<VehicleSite> vehicles_;    // sorted by id
  LinkLatencyTable table_;
  double propagation_speed_ = kSpeedOfLightMps;
  LatencyMode mode_ = LatencyMode::TableLatency;
  std::vector<std::vector<NodeId>> neighbour_sets_;  // parallel to fogs_
};

}  // namespace fogsim
