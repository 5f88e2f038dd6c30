#pragma once

#include <cstddef>
#include <vector>

#include "fogsim/errors.hpp"
#include "fogsim/types.hpp"

namespace fogsim {

class FogNode;

enum class PowerState : std::uint8_t { Off, On };
const char* to_string(PowerState s);

// Incremental energy account: closed intervals are folded into total_j, the
// open interval since last_update runs at last_power_w.
struct EnergyLedger {
  double total_j = 0.0;
  SimTime last_update = 0;
  double last_power_w = 0.0;

  /// Folds the interval [last_update, now] at last_power_w into the total,
  /// then switches the open interval to new_power_w. Throws
  /// TimeRegressionError when now precedes last_update.
  void update(SimTime now, double new_power_w);

  /// Total as if the ledger were updated at `now`, without mutating it.
  double total_at(SimTime now) const;
};

// One node's state as reported to the fog controller.
struct NodeStatus {
  NodeId id = kNoNode;
  PowerState power = PowerState::Off;
  std::size_t queue_size = 0;
  bool processing = false;
};

struct PowerSignalCmd {
  NodeId node = kNoNode;
  PowerState to = PowerState::Off;
};

/// Controller rules: a node that is OFF with a non-empty queue gets an ON
/// signal; a node that is ON, not processing and with an empty queue gets an
/// OFF signal. Everything else is left alone.
std::vector<PowerSignalCmd> evaluate_power_signals(
    const std::vector<NodeStatus>& nodes);

/// Applies a power signal to a node. ON powers the node up (accruing
/// boot_energy_j and delaying availability by boot_delay) and is ignored when
/// already on. OFF is applied only when the node is idle with an empty queue.
/// Returns true when the node's power state changed.
bool apply_power_signal(FogNode& node, PowerState signal, SimTime now,
                        double boot_energy_j = 0.0, SimTime boot_delay = 0);

}  // namespace fogsim
