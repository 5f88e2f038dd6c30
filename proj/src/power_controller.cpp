#include "fogsim/power_controller.hpp"

#include <string>

#include "fogsim/node.hpp"

namespace fogsim {

const char* to_string(PowerState s) {
  return s == PowerState::On ? "on" : "off";
}

void EnergyLedger::update(SimTime now, double new_power_w) {
  if (now < last_update) {
    throw TimeRegressionError("energy update at " + std::to_string(now) +
                              " precedes last update " + std::to_string(last_update));
  }
  total_j += to_seconds(now - last_update) * last_power_w;
  last_update = now;
  last_power_w = new_power_w;
}

double EnergyLedger::total_at(SimTime now) const {
  if (now < last_update) {
    throw TimeRegressionError("energy query precedes last update");
  }
  return total_j + to_seconds(now - last_update) * last_power_w;
}

std::vector<PowerSignalCmd> evaluate_power_signals(
    const std::vector<NodeStatus>& nodes) {
  std::vector<PowerSignalCmd> signals;
  for (const NodeStatus& n : nodes) {
    if (n.power == PowerState::Off) {
      if (n.queue_size != 0) {
        signals.push_back({n.id, PowerState::On});
      }
    } else if (!n.processing && n.queue_size == 0) {
      signals.push_back({n.id, PowerState::Off});
    }
  }
  return signals;
}

bool apply_power_signal(FogNode& node, PowerState signal, SimTime now,
                        double boot_energy_j, SimTime boot_delay) {
  if (signal == PowerState::On) {
    if (node.power == PowerState::On) return false;
    node.power = PowerState::On;
    node.available_at = now + boot_delay;
    node.ledger.total_j += boot_energy_j;
    node.ledger.update(now, node.idle_power_w);
    return true;
  }
  // OFF is only honoured for an idle node with an empty queue.
  if (node.power == PowerState::Off) return false;
  if (node.processing || !node.queue_empty()) return false;
  node.power = PowerState::Off;
  node.ledger.update(now, 0.0);
  return true;
}

}  // namespace fogsim
