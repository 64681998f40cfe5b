#include "tdc/waits.hpp"

#include <set>
#include <utility>

namespace tdc {

namespace {

void keep_min(std::optional<TimeValue>& best, const std::optional<TimeValue>& candidate) {
  if (candidate && (!best || *candidate < *best)) best = candidate;
}

}  // namespace

std::optional<TimeValue> nearest_positive_offset(const Interval& iv, const TimeValue& now) {
  std::optional<TimeValue> best;
  for (const TimeValue* bound : {&iv.lo, &iv.hi}) {
    if (!bound->is_finite()) continue;
    const TimeValue offset = *bound - now;
    if (offset.is_positive()) keep_min(best, offset);
  }
  return best;
}

bool wait_eligible(std::span<const Disjunct> constraints, const ActivationSet& activations) {
  if (!activations.empty()) return true;
  for (const auto& dj : constraints) {
    for (const auto& c : dj) {
      if (c.is_bounded()) return true;
    }
  }
  return false;
}

std::vector<TimeValue> backward_chain(std::span<const Disjunct> constraints, TimepointId v,
                                      const TimeValue& deadline, const TimeValue& now) {
  std::vector<TimeValue> candidates;
  if (!deadline.is_finite()) return candidates;

  std::set<std::pair<TimepointId, TimeValue>> visited;
  std::vector<std::pair<TimepointId, TimeValue>> frontier{{v, deadline}};
  while (!frontier.empty()) {
    auto [node, limit] = frontier.back();
    frontier.pop_back();
    if (!visited.emplace(node, limit).second) continue;
    for (const auto& dj : constraints) {
      for (const auto& c : dj) {
        if (!c.is_distance() || c.first != node || c.interval.lo.is_negative()) continue;
        for (const TimeValue* gap : {&c.interval.lo, &c.interval.hi}) {
          if (!gap->is_finite()) continue;
          const TimeValue earlier = limit - *gap;
          // Gaps are non-negative, so nothing below a past deadline can be positive.
          if (!(earlier - now).is_positive()) continue;
          candidates.push_back(earlier - now);
          frontier.emplace_back(c.second, earlier);
        }
      }
    }
  }
  return candidates;
}

std::optional<TimeValue> wait_duration(std::span<const Disjunct> constraints,
                                       const ActivationSet& activations, const TimeValue& now) {
  std::optional<TimeValue> best;
  for (const auto& [u, windows] : activations) {
    for (const auto& w : windows) keep_min(best, nearest_positive_offset(w, now));
  }
  for (const auto& dj : constraints) {
    for (const auto& c : dj) {
      if (!c.is_bounded()) continue;
      keep_min(best, nearest_positive_offset(c.interval, now));
      for (const TimeValue* seed : {&c.interval.lo, &c.interval.hi}) {
        for (const auto& cand : backward_chain(constraints, c.first, *seed, now)) keep_min(best, cand);
      }
    }
  }
  return best;
}

}  // namespace tdc
