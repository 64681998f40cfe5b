#include "tdc/simulate.hpp"

#include <algorithm>
#include <map>

namespace tdc {

std::optional<TimeValue> SimulationTrace::time_of(TimepointId v) const {
  for (const auto& e : events) {
    if (e.timepoint == v) return e.time;
  }
  return std::nullopt;
}

bool holds(const Conjunct& c, const std::vector<std::optional<TimeValue>>& values) {
  switch (c.kind) {
    case Conjunct::Kind::literal_true:
      return true;
    case Conjunct::Kind::literal_false:
      return false;
    case Conjunct::Kind::bounded:
      return c.interval.contains(values.at(c.first).value());
    case Conjunct::Kind::distance:
      return c.interval.contains(values.at(c.first).value() - values.at(c.second).value());
  }
  return false;
}

namespace {

class Simulation {
 public:
  Simulation(const Dtnu& d, const Strategy& s, std::mt19937_64& rng, SamplingMode mode)
      : d_(d), s_(s), rng_(rng), mode_(mode), values_(d.size()) {}

  SimulationTrace run() {
    for (const auto& act : d_.activated) draw(act.target, TimeValue(0), act.windows);

    std::size_t at = s_.root;
    while (true) {
      const StrategyNode& n = s_.at(at);
      if (n.kind == StrategyNode::Kind::execute) {
        execute(n.timepoint, n.at);
        at = n.next;
      } else if (n.kind == StrategyNode::Kind::wait) {
        at = wait(n);
      } else {
        auto executions = n.executions;
        std::stable_sort(executions.begin(), executions.end(),
                         [](const auto& x, const auto& y) { return x.second < y.second; });
        for (const auto& [a, t] : executions) execute(a, t);
        break;
      }
    }
    return finish();
  }

 private:
  void execute(TimepointId a, const TimeValue& t) {
    if (!d_.is_controllable(a)) throw StrategyMismatch("strategy executes uncontrollable '" + d_.name(a) + "'");
    if (values_[a]) throw StrategyMismatch("'" + d_.name(a) + "' executed twice");
    if (t < now_) throw StrategyMismatch("'" + d_.name(a) + "' executed in the past");
    now_ = t;
    values_[a] = t;
    trace_.events.push_back({SimulationEvent::Kind::execution, a, t});
    for (const auto& link : d_.links) {
      if (link.source == a) draw(link.target, t, link.intervals);
    }
  }

  void draw(TimepointId u, const TimeValue& origin, const std::vector<Interval>& windows) {
    std::uniform_int_distribution<std::size_t> pick(0, windows.size() - 1);
    const Interval& w = windows[pick(rng_)];
    if (!w.hi.is_finite()) throw std::invalid_argument("cannot sample the unbounded window of '" + d_.name(u) + "'");
    TimeValue offset;
    if (mode_ == SamplingMode::endpoint) {
      offset = std::bernoulli_distribution(0.5)(rng_) ? w.hi : w.lo;
    } else {
      const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, 1000)(rng_);
      offset = w.lo + (w.hi - w.lo) * TimeValue(k, 1000);
    }
    pending_[u] = origin + offset;
  }

  std::size_t wait(const StrategyNode& n) {
    if (n.at < now_) throw StrategyMismatch("wait starts in the past");
    const TimeValue end = n.at + n.duration;
    std::vector<TimepointId> occurred;
    for (auto it = pending_.begin(); it != pending_.end();) {
      if (it->second <= end) {
        const TimepointId u = it->first;
        values_[u] = it->second;
        trace_.events.push_back({SimulationEvent::Kind::occurrence, u, it->second});
        occurred.push_back(u);
        it = pending_.erase(it);
      } else {
        ++it;
      }
    }
    std::sort(occurred.begin(), occurred.end());
    for (const auto& p : n.reactive) {
      if (!std::binary_search(occurred.begin(), occurred.end(), p.trigger)) continue;
      const TimeValue t = *values_[p.trigger];
      if (values_[p.reaction]) throw StrategyMismatch("'" + d_.name(p.reaction) + "' executed twice");
      values_[p.reaction] = t;
      trace_.events.push_back({SimulationEvent::Kind::execution, p.reaction, t});
      for (const auto& link : d_.links) {
        if (link.source == p.reaction) draw(link.target, t, link.intervals);
      }
    }
    now_ = end;
    for (const auto& b : n.branches) {
      if (b.occurred == occurred) return b.next;
    }
    std::string names;
    for (auto u : occurred) names += (names.empty() ? "" : ",") + d_.name(u);
    throw StrategyMismatch("no branch for occurred set {" + names + "} at time " + end.to_string());
  }

  SimulationTrace finish() {
    for (const auto& [u, t] : pending_) {
      values_[u] = t;
      trace_.events.push_back({SimulationEvent::Kind::occurrence, u, t});
    }
    for (TimepointId v = 0; v < d_.size(); ++v) {
      if (!values_[v]) throw StrategyMismatch("'" + d_.name(v) + "' never executed");
    }
    std::stable_sort(trace_.events.begin(), trace_.events.end(),
                     [](const auto& x, const auto& y) { return x.time < y.time; });
    trace_.satisfied = true;
    for (std::size_t i = 0; i < d_.constraints.size(); ++i) {
      const auto& dj = d_.constraints[i];
      if (std::none_of(dj.begin(), dj.end(), [&](const Conjunct& c) { return holds(c, values_); })) {
        trace_.satisfied = false;
        trace_.violated_disjunct = i;
        break;
      }
    }
    return std::move(trace_);
  }

  const Dtnu& d_;
  const Strategy& s_;
  std::mt19937_64& rng_;
  SamplingMode mode_;
  std::vector<std::optional<TimeValue>> values_;
  std::map<TimepointId, TimeValue> pending_;
  TimeValue now_;
  SimulationTrace trace_;
};

}  // namespace

SimulationTrace simulate_execution(const Dtnu& d, const Strategy& s, std::mt19937_64& rng, SamplingMode mode) {
  if (s.nodes.empty()) throw std::invalid_argument("empty strategy");
  return Simulation(d, s, rng, mode).run();
}

}  // namespace tdc
