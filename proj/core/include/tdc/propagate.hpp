#pragma once

#include "tdc/model.hpp"

#include <map>
#include <span>
#include <vector>

namespace tdc {

/// When a timepoint was executed or occurred: an exact instant, or a window
/// when it was resolved during a wait.
struct ExecutionRecord {
  bool exact = true;
  Interval window;  ///< [t, t] when exact

  static ExecutionRecord at(const TimeValue& t) { return {true, {t, t}}; }
  static ExecutionRecord within(const Interval& w) { return {false, w}; }

  friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

using ScheduleMemory = std::map<TimepointId, ExecutionRecord>;

enum class SimplifyStatus { open, violated, satisfied };

struct ResolvedTimepoint {
  TimepointId id = 0;
  Interval window;
};

/// Controllable `reaction` executed at the very instant `trigger` occurs.
struct ReactivePair {
  TimepointId trigger = 0;
  TimepointId reaction = 0;

  friend bool operator==(const ReactivePair&, const ReactivePair&) = default;
  friend auto operator<=>(const ReactivePair&, const ReactivePair&) = default;
};

/// Substitutes the exact execution of `executed` at time `t`:
///   executed in [x,y]         -> true / false
///   v - executed in [x,y]     -> v in [t+x, t+y]
///   executed - v in [x,y]     -> v in [t-y, t-x]
std::vector<Disjunct> apply_exact_execution(std::span<const Disjunct> constraints,
                                            TimepointId executed, const TimeValue& t);

/// Tight-bound rewrite for timepoints resolved within windows during a wait
/// that ends at `now`. A conjunct vj - vi in [x,y] with vi resolved on
/// [lo,hi] becomes vj in [hi+x, lo+y] (false when empty). Conjuncts between
/// two resolved timepoints become literals: true only when every pair of
/// values satisfies them, except for reactive pairs which are known to be
/// simultaneous. Bounded conjuncts on unresolved timepoints whose upper
/// bound lies before `now` become false.
std::vector<Disjunct> apply_windowed_execution(std::span<const Disjunct> constraints,
                                               std::span<const ResolvedTimepoint> resolved,
                                               std::span<const ReactivePair> reactive_pairs,
                                               const TimeValue& now);

/// Bounded conjuncts v in [x,y] with y < now can no longer hold for an
/// unscheduled v; they become false.
std::vector<Disjunct> prune_past_bounds(std::span<const Disjunct> constraints, const TimeValue& now);

struct Simplified {
  std::vector<Disjunct> constraints;
  SimplifyStatus status = SimplifyStatus::open;
};

/// Drops false conjuncts and satisfied disjuncts. Violated when some
/// disjunct has only false conjuncts; satisfied when nothing remains.
Simplified simplify(std::vector<Disjunct> constraints);

}  // namespace tdc
