#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace fogsim {

using NodeId = std::int32_t;
using VehicleId = std::int32_t;
using TaskId = std::int64_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr TaskId kNoTask = -1;

// Simulation time in integer nanoseconds. Millisecond doubles appear only at
// API boundaries (config files, reports); internal arithmetic stays integral
// so queue-time sums and replay traces do not drift.
using SimTime = std::int64_t;

inline constexpr SimTime kTimeNever = std::numeric_limits<SimTime>::max();

constexpr double to_ms(SimTime t) { return static_cast<double>(t) / 1e6; }
constexpr double to_seconds(SimTime t) { return static_cast<double>(t) / 1e9; }

inline SimTime from_ms(double ms) { return static_cast<SimTime>(std::llround(ms * 1e6)); }
inline SimTime from_seconds(double s) { return static_cast<SimTime>(std::llround(s * 1e9)); }

}  // namespace fogsim
