#pragma once

#include "tdc/model.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace tdc {

/// Absolute occurrence windows of activated, not yet occurred
/// uncontrollables.
using ActivationSet = std::map<TimepointId, std::vector<Interval>>;

/// A wait is worth considering when an uncontrollable is activated or some
/// conjunct pins a timepoint to an absolute interval.
bool wait_eligible(std::span<const Disjunct> constraints, const ActivationSet& activations);

/// Candidate wait lengths obtained by chaining distance conjuncts
/// v - v' in [x', y'] (x' >= 0) backwards from `deadline` on `v`. Returns
/// every strictly positive candidate met along the chain.
std::vector<TimeValue> backward_chain(std::span<const Disjunct> constraints, TimepointId v,
                                      const TimeValue& deadline, const TimeValue& now);

/// The three duration rules, minimised. Empty when no rule yields a
/// strictly positive value; the wait child is then not created.
std::optional<TimeValue> wait_duration(std::span<const Disjunct> constraints,
                                       const ActivationSet& activations, const TimeValue& now);

/// Smaller strictly positive finite value among lo - now and hi - now.
std::optional<TimeValue> nearest_positive_offset(const Interval& iv, const TimeValue& now);

}  // namespace tdc
