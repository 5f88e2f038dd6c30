#pragma once

#include <stdexcept>
#include <string>

namespace fogsim {

// Scenario or configuration problem. The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vehicle is outside the coverage radius of every fog node.
struct NoCoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An event was scheduled before the current simulation clock.
struct PastEventError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An energy ledger was asked to account for an interval ending in the past.
struct TimeRegressionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A latency record was requested for a task that never reached a terminal
// state.
struct IncompleteTraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fogsim
