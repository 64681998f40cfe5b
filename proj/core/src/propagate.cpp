#include "tdc/propagate.hpp"

#include <algorithm>
#include <optional>

namespace tdc {

namespace {

Conjunct literal(bool value) { return value ? Conjunct::truth() : Conjunct::falsity(); }

Conjunct bounded_or_false(TimepointId v, const TimeValue& lo, const TimeValue& hi) {
  if (hi < lo) return Conjunct::falsity();
  return Conjunct::bounded(v, {lo, hi});
}

}  // namespace

std::vector<Disjunct> apply_exact_execution(std::span<const Disjunct> constraints,
                                            TimepointId executed, const TimeValue& t) {
  std::vector<Disjunct> out;
  out.reserve(constraints.size());
  for (const auto& dj : constraints) {
    Disjunct nd;
    nd.reserve(dj.size());
    for (const auto& c : dj) {
      if (!c.mentions(executed)) {
        nd.push_back(c);
      } else if (c.is_bounded()) {
        nd.push_back(literal(c.interval.contains(t)));
      } else if (c.second == executed) {
        nd.push_back(Conjunct::bounded(c.first, {t + c.interval.lo, t + c.interval.hi}));
      } else {
        nd.push_back(Conjunct::bounded(c.second, {t - c.interval.hi, t - c.interval.lo}));
      }
    }
    out.push_back(std::move(nd));
  }
  return out;
}

std::vector<Disjunct> apply_windowed_execution(std::span<const Disjunct> constraints,
                                               std::span<const ResolvedTimepoint> resolved,
                                               std::span<const ReactivePair> reactive_pairs,
                                               const TimeValue& now) {
  auto window_of = [&](TimepointId v) -> const Interval* {
    for (const auto& r : resolved) {
      if (r.id == v) return &r.window;
    }
    return nullptr;
  };
  auto simultaneous = [&](TimepointId a, TimepointId b) {
    return std::any_of(reactive_pairs.begin(), reactive_pairs.end(), [&](const ReactivePair& p) {
      return (p.trigger == a && p.reaction == b) || (p.trigger == b && p.reaction == a);
    });
  };

  std::vector<Disjunct> out;
  out.reserve(constraints.size());
  for (const auto& dj : constraints) {
    Disjunct nd;
    nd.reserve(dj.size());
    for (const auto& c : dj) {
      if (c.is_literal()) {
        nd.push_back(c);
        continue;
      }
      if (c.is_bounded()) {
        if (const Interval* w = window_of(c.first)) {
          nd.push_back(literal(c.interval.contains(*w)));
        } else {
          nd.push_back(c);
        }
        continue;
      }
      const Interval* wi = window_of(c.second);  // c: first - second in [x,y]
      const Interval* wj = window_of(c.first);
      const TimeValue& x = c.interval.lo;
      const TimeValue& y = c.interval.hi;
      if (wi && wj) {
        if (simultaneous(c.first, c.second)) {
          nd.push_back(literal(c.interval.contains(TimeValue(0))));
        } else {
          // Range of first - second over both windows; pessimistic.
          const Interval diff{wj->lo - wi->hi, wj->hi - wi->lo};
          nd.push_back(literal(c.interval.contains(diff)));
        }
      } else if (wi) {
        nd.push_back(bounded_or_false(c.first, wi->hi + x, wi->lo + y));
      } else if (wj) {
        nd.push_back(bounded_or_false(c.second, wj->hi - y, wj->lo - x));
      } else {
        nd.push_back(c);
      }
    }
    out.push_back(std::move(nd));
  }
  return prune_past_bounds(out, now);
}

std::vector<Disjunct> prune_past_bounds(std::span<const Disjunct> constraints, const TimeValue& now) {
  std::vector<Disjunct> out(constraints.begin(), constraints.end());
  for (auto& dj : out) {
    for (auto& c : dj) {
      if (c.is_bounded() && c.interval.hi < now) c = Conjunct::falsity();
    }
  }
  return out;
}

Simplified simplify(std::vector<Disjunct> constraints) {
  Simplified result;
  result.constraints.reserve(constraints.size());
  bool violated = false;
  for (auto& dj : constraints) {
    if (std::any_of(dj.begin(), dj.end(), [](const Conjunct& c) { return c.is_true(); })) continue;
    std::erase_if(dj, [](const Conjunct& c) { return c.is_false(); });
    if (dj.empty()) violated = true;
    result.constraints.push_back(std::move(dj));
  }
  if (violated) {
    result.status = SimplifyStatus::violated;
  } else if (result.constraints.empty()) {
    result.status = SimplifyStatus::satisfied;
  }
  return result;
}

}  // namespace tdc
