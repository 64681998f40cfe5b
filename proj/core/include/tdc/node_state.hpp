#pragma once

#include "tdc/model.hpp"
#include "tdc/propagate.hpp"
#include "tdc/waits.hpp"

#include <algorithm>
#include <vector>

namespace tdc {

/// Sub-problem carried by a DTNU node of the search tree: the time, the
/// propagated constraints C', the schedule memory S and the activation
/// windows B.
struct NodeState {
  TimeValue time;
  std::vector<Disjunct> constraints;
  SimplifyStatus status = SimplifyStatus::open;
  ScheduleMemory memory;
  ActivationSet activations;
  /// Controllables executed at `time` since the last wait (sorted).
  std::vector<TimepointId> executed_since_wait;

  bool scheduled(TimepointId v) const { return memory.contains(v); }
};

/// A d-OR choice: execute a controllable now, or wait.
struct Decision {
  enum class Kind : std::uint8_t { execute, wait };
  Kind kind = Kind::wait;
  TimepointId timepoint = 0;

  static Decision execute(TimepointId a) { return {Kind::execute, a}; }
  static Decision wait() { return {Kind::wait, 0}; }
  bool is_wait() const { return kind == Kind::wait; }

  friend bool operator==(const Decision&, const Decision&) = default;
};

}  // namespace tdc
