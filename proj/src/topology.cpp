#include "fogsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fogsim {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double propagation_delay_ms(double d, double ps) {
  if (ps <= 0.0) {
    throw ValidationError("propagation speed must be positive, got " +
                          std::to_string(ps));
  }
  return d / ps * 1e3;
}

Topology::Topology(std::vector<FogSite> fogs, std::vector<VehicleSite> vehicles,
                   LinkLatencyTable table, double propagation_speed_mps,
                   LatencyMode mode)
    : fogs_(std::move(fogs)),
      vehicles_(std::move(vehicles)),
      table_(std::move(table)),
      propagation_speed_(propagation_speed_mps),
      mode_(mode) {
  std::sort(fogs_.begin(), fogs_.end(),
            [](const FogSite& a, const FogSite& b) { return a.id < b.id; });
  std::sort(vehicles_.begin(), vehicles_.end(),
            [](const VehicleSite& a, const VehicleSite& b) { return a.id < b.id; });
  if (propagation_speed_ <= 0.0) {
    throw ValidationError("propagation speed must be positive");
  }
  for (std::size_t i = 0; i + 1 < fogs_.size(); ++i) {
    if (fogs_[i].id == fogs_[i + 1].id) {
      throw ValidationError("duplicate fog node id " + std::to_string(fogs_[i].id));
    }
  }
  for (std::size_t i = 0; i + 1 < vehicles_.size(); ++i) {
    if (vehicles_[i].id == vehicles_[i + 1].id) {
      throw ValidationError("duplicate vehicle id " + std::to_string(vehicles_[i].id));
    }
  }
  for (const FogSite& f : fogs_) {
    if (!(f.coverage_radius > 0.0)) {
      throw ValidationError("fog node " + std::to_string(f.id) +
                            ": coverage radius must be positive");
    }
    if (!std::isfinite(f.pos.x) || !std::isfinite(f.pos.y)) {
      throw ValidationError("fog node " + std::to_string(f.id) +
                            ": position must be finite");
    }
  }
  if (mode_ == LatencyMode::TableLatency) {
    for (const VehicleSite& v : vehicles_) {
      if (table_.vehicle_fog_ms.find(v.id) == table_.vehicle_fog_ms.end()) {
        throw ValidationError("vehicle " + std::to_string(v.id) +
                              ": missing vehicle-fog link latency");
      }
    }
  }

  neighbour_sets_.resize(fogs_.size());
  for (std::size_t i = 0; i < fogs_.size(); ++i) {
    for (const FogSite& g : fogs_) {
      if (g.id == fogs_[i].id) continue;
      if (distance(fogs_[i].pos, g.pos) <= fogs_[i].coverage_radius) {
        neighbour_sets_[i].push_back(g.id);
      }
    }
  }
}

const FogSite& Topology::fog_site(NodeId id) const {
  auto it = std::lower_bound(
      fogs_.begin(), fogs_.end(), id,
      [](const FogSite& f, NodeId want) { return f.id < want; });
  if (it == fogs_.end() || it->id != id) {
    throw ValidationError("unknown fog node id " + std::to_string(id));
  }
  return *it;
}

const VehicleSite& Topology::vehicle_site(VehicleId id) const {
  auto it = std::lower_bound(
      vehicles_.begin(), vehicles_.end(), id,
      [](const VehicleSite& v, VehicleId want) { return v.id < want; });
  if (it == vehicles_.end() || it->id != id) {
    throw ValidationError("unknown vehicle id " + std::to_string(id));
  }
  return *it;
}

NodeId Topology::nearest_fog_node(VehicleId v) const {
  const VehicleSite& site = vehicle_site(v);
  NodeId best = kNoNode;
  double best_d = 0.0;
  for (const FogSite& f : fogs_) {
    double d = distance(site.pos, f.pos);
    if (d > f.coverage_radius) continue;
    if (best == kNoNode || d < best_d) {
      best = f.id;
      best_d = d;
    }
    // equal distance keeps the lower id; fogs_ is sorted ascending
  }
  if (best == kNoNode) {
    throw NoCoverageError("vehicle " + std::to_string(v) +
                          " is outside every fog node's coverage");
  }
  return best;
}

const std::vector<NodeId>& Topology::neighbours(NodeId f) const {
  const FogSite& site = fog_site(f);
  return neighbour_sets_[static_cast<std::size_t>(&site - fogs_.data())];
}

double Topology::vehicle_fog_latency_ms(VehicleId v, NodeId f) const {
  if (mode_ == LatencyMode::GeometricPd) {
    return propagation_delay_ms(distance(vehicle_site(v).pos, fog_site(f).pos),
                                propagation_speed_);
  }
  return table_.vehicle_fog_ms.at(v);
}

double Topology::fog_fog_latency_ms(NodeId a, NodeId b) const {
  if (mode_ == LatencyMode::GeometricPd) {
    return propagation_delay_ms(distance(fog_site(a).pos, fog_site(b).pos),
                                propagation_speed_);
  }
  return table_.fog_fog_ms;
}

double Topology::link_latency_ms(LinkKind kind, std::int64_t a, std::int64_t b) const {
  switch (kind) {
    case LinkKind::VehicleToFog:
      return vehicle_fog_latency_ms(static_cast<VehicleId>(a), static_cast<NodeId>(b));
    case LinkKind::FogToFog:
      return fog_fog_latency_ms(static_cast<NodeId>(a), static_cast<NodeId>(b));
    case LinkKind::FogToCloud:
      return table_.fog_cloud_ms;
    case LinkKind::SensorToVehicle:
      return table_.sensor_vehicle_ms;
  }
  throw ValidationError("unknown link kind");
}

}  // namespace fogsim
