#pragma once

#include "tdc/model.hpp"
#include "tdc/strategy.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace tdc {

/// The strategy has no branch for what the environment did.
class StrategyMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SamplingMode : std::uint8_t {
  uniform,   ///< a window chosen uniformly, then a point on a 1/1000 grid of it
  endpoint,  ///< a window chosen uniformly, then its lower or upper end
};

struct SimulationEvent {
  enum class Kind : std::uint8_t { execution, occurrence };
  Kind kind = Kind::execution;
  TimepointId timepoint = 0;
  TimeValue time;

  friend bool operator==(const SimulationEvent&, const SimulationEvent&) = default;
};

struct SimulationTrace {
  std::vector<SimulationEvent> events;  ///< sorted by time
  bool satisfied = false;
  std::optional<std::size_t> violated_disjunct;  ///< index into Dtnu::constraints

  /// Time of `v` in the realized timeline.
  std::optional<TimeValue> time_of(TimepointId v) const;
};

/// Plays `s` against a random environment: occurrences are drawn when an
/// uncontrollable is activated, observed at the end of each wait, and the
/// executor follows the matching branch. Throws StrategyMismatch when no
/// branch matches or the strategy goes back in time.
SimulationTrace simulate_execution(const Dtnu& d, const Strategy& s, std::mt19937_64& rng,
                                   SamplingMode mode = SamplingMode::uniform);

/// True when the conjunct holds for the given values.
bool holds(const Conjunct& c, const std::vector<std::optional<TimeValue>>& values);

}  // namespace tdc
