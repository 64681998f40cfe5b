#include "tdc/search.hpp"

#include "tdc/dtn.hpp"
#include "tdc/encode.hpp"
#include "tdc/heuristic_client.hpp"
#include "tdc/waits.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tdc {

SearchNode& SearchNode::add_child(NodeKind k) {
  children.push_back(std::make_unique<SearchNode>(k, this));
  SearchNode& c = *children.back();
  c.dor_depth = dor_depth;
  return c;
}

bool SearchNode::set_truth(Truth t) {
  if (t == Truth::unknown) throw std::logic_error("truth can only be set to true or false");
  if (truth == t) return false;
  if (truth != Truth::unknown) throw std::logic_error("truth attribute changed after being set");
  truth = t;
  return true;
}

void propagate_truth(SearchNode& node) {
  SearchNode* psi = &node;
  while (SearchNode* omega = psi->parent) {
    const Truth beta = psi->truth;
    bool changed = false;
    switch (omega->kind) {
      case NodeKind::dtnu:
      case NodeKind::wait:
        changed = omega->set_truth(beta);
        break;
      case NodeKind::d_or:
      case NodeKind::w_or:
        if (beta == Truth::yes) {
          changed = omega->set_truth(Truth::yes);
        } else if (std::all_of(omega->children.begin(), omega->children.end(),
                               [](const auto& c) { return c->truth == Truth::no; })) {
          changed = omega->set_truth(Truth::no);
        }
        break;
      case NodeKind::and_node:
        if (beta == Truth::no) {
          changed = omega->set_truth(Truth::no);
        } else if (std::all_of(omega->children.begin(), omega->children.end(),
                               [](const auto& c) { return c->truth == Truth::yes; })) {
          changed = omega->set_truth(Truth::yes);
        }
        break;
    }
    if (!changed) return;
    psi = omega;
  }
}

void assign_truth(SearchNode& node, Truth value) {
  if (node.set_truth(value)) propagate_truth(node);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::tdc:
      return "TDC";
    case Verdict::not_tdc:
      return "NotTDC";
    case Verdict::timeout:
      return "Timeout";
  }
  return "?";
}

namespace {

/// Index subsets of {0..n-1} by increasing size, each size in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      out.push_back(pick);
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

void sort_by_name(const Dtnu& d, std::vector<TimepointId>& ids) {
  std::sort(ids.begin(), ids.end(), [&](TimepointId a, TimepointId b) { return d.name(a) < d.name(b); });
}

std::optional<Interval> hull_within(const std::vector<Interval>& pieces, const TimeValue& from,
                                    const TimeValue& to) {
  std::optional<Interval> hull;
  for (const auto& p : pieces) {
    const TimeValue lo = max(p.lo, from);
    const TimeValue hi = min(p.hi, to);
    if (hi < lo) continue;
    if (!hull) {
      hull = Interval{lo, hi};
    } else {
      hull->lo = min(hull->lo, lo);
      hull->hi = max(hull->hi, hi);
    }
  }
  return hull;
}

TimeValue min_lo(const std::vector<Interval>& pieces) {
  TimeValue v = TimeValue::infinity();
  for (const auto& p : pieces) v = min(v, p.lo);
  return v;
}

TimeValue max_hi(const std::vector<Interval>& pieces) {
  TimeValue v = TimeValue::negative_infinity();
  for (const auto& p : pieces) v = max(v, p.hi);
  return v;
}

bool is_link_source(const Dtnu& d, TimepointId a) {
  return std::any_of(d.links.begin(), d.links.end(), [&](const auto& l) { return l.source == a; });
}

}  // namespace

NodeState root_state(const Dtnu& d) {
  NodeState s;
  s.time = TimeValue(0);
  Simplified simp = simplify(prune_past_bounds(d.constraints, s.time));
  s.constraints = std::move(simp.constraints);
  s.status = simp.status;
  for (const auto& act : d.activated) s.activations[act.target] = act.windows;
  return s;
}

NodeState execute_transition(const Dtnu& d, const NodeState& s, TimepointId a) {
  if (!d.is_controllable(a) || s.scheduled(a)) {
    throw std::invalid_argument("cannot execute '" + d.name(a) + "'");
  }
  NodeState next;
  next.time = s.time;
  Simplified simp = simplify(prune_past_bounds(apply_exact_execution(s.constraints, a, s.time), s.time));
  next.constraints = std::move(simp.constraints);
  next.status = simp.status;
  next.memory = s.memory;
  next.memory[a] = ExecutionRecord::at(s.time);
  next.activations = s.activations;
  for (const auto& link : d.links) {
    if (link.source != a) continue;
    auto& windows = next.activations[link.target];
    for (const auto& iv : link.intervals) windows.push_back({s.time + iv.lo, s.time + iv.hi});
  }
  next.executed_since_wait = s.executed_since_wait;
  next.executed_since_wait.insert(
      std::lower_bound(next.executed_since_wait.begin(), next.executed_since_wait.end(), a), a);
  return next;
}

NodeState outcome_transition(const Dtnu& d, const NodeState& s, const TimeValue& dt,
                             std::span<const ReactivePair> reactive,
                             std::span<const TimepointId> occurred) {
  NodeState next;
  next.time = s.time + dt;
  const TimeValue& end = next.time;
  next.memory = s.memory;

  auto did_occur = [&](TimepointId u) { return std::find(occurred.begin(), occurred.end(), u) != occurred.end(); };

  std::vector<ResolvedTimepoint> resolved;
  std::map<TimepointId, Interval> windows;
  for (TimepointId u : occurred) {
    auto it = s.activations.find(u);
    if (it == s.activations.end()) throw std::logic_error("'" + d.name(u) + "' is not activated");
    auto hull = hull_within(it->second, s.time, end);
    if (!hull) throw std::logic_error("'" + d.name(u) + "' cannot occur during this wait");
    windows[u] = *hull;
    resolved.push_back({u, *hull});
    next.memory[u] = ExecutionRecord::within(*hull);
  }
  std::vector<ReactivePair> fired;
  for (const auto& p : reactive) {
    if (!did_occur(p.trigger)) continue;
    const Interval& w = windows.at(p.trigger);
    resolved.push_back({p.reaction, w});
    fired.push_back(p);
    next.memory[p.reaction] = ExecutionRecord::within(w);
  }

  Simplified simp = simplify(apply_windowed_execution(s.constraints, resolved, fired, end));
  next.constraints = std::move(simp.constraints);
  next.status = simp.status;

  for (const auto& [u, pieces] : s.activations) {
    if (did_occur(u)) continue;
    std::vector<Interval> left;
    for (const auto& p : pieces) {
      if (p.hi <= end) continue;
      left.push_back({max(p.lo, end), p.hi});
    }
    if (left.empty()) throw std::logic_error("'" + d.name(u) + "' was certain to occur during the wait");
    next.activations[u] = std::move(left);
  }
  return next;
}

std::vector<Decision> expand_dor(const Dtnu& d, const NodeState& s) {
  std::vector<Decision> out;
  for (TimepointId a : d.controllables) {
    if (!s.scheduled(a)) out.push_back(Decision::execute(a));
  }
  if (wait_eligible(s.constraints, s.activations) && wait_duration(s.constraints, s.activations, s.time)) {
    out.push_back(Decision::wait());
  }
  return out;
}

std::vector<std::vector<ReactivePair>> reactive_strategies(const Dtnu& d, const NodeState& s,
                                                           const TimeValue& dt) {
  const TimeValue end = s.time + dt;
  auto occurrable = [&](TimepointId u) {
    auto it = s.activations.find(u);
    return it != s.activations.end() && hull_within(it->second, s.time, end).has_value();
  };

  std::map<TimepointId, TimepointId> trigger_of;
  for (const auto& dj : s.constraints) {
    for (const auto& c : dj) {
      if (!c.is_distance() || !c.interval.lo.is_zero()) continue;
      const TimepointId u = c.first;
      const TimepointId a = c.second;
      if (d.is_controllable(u) || !d.is_controllable(a) || s.scheduled(a)) continue;
      if (is_link_source(d, a) || !occurrable(u)) continue;
      auto [it, fresh] = trigger_of.emplace(a, u);
      if (!fresh && u < it->second) it->second = u;
    }
  }

  std::vector<TimepointId> phi;
  for (const auto& [a, u] : trigger_of) phi.push_back(a);
  sort_by_name(d, phi);

  std::vector<std::vector<ReactivePair>> out;
  for (const auto& pick : subsets_by_size(phi.size())) {
    std::vector<ReactivePair> r;
    for (auto i : pick) r.push_back({trigger_of.at(phi[i]), phi[i]});
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<TimepointId>> enumerate_outcomes(const Dtnu& d, const NodeState& s,
                                                         const TimeValue& dt) {
  const TimeValue end = s.time + dt;
  std::vector<TimepointId> certain;
  std::vector<TimepointId> maybe;
  for (const auto& [u, pieces] : s.activations) {
    if (max_hi(pieces) <= end) {
      certain.push_back(u);
    } else if (min_lo(pieces) <= end) {
      maybe.push_back(u);
    }
  }
  sort_by_name(d, maybe);

  std::vector<std::vector<TimepointId>> out;
  for (const auto& pick : subsets_by_size(maybe.size())) {
    std::vector<TimepointId> lambda = certain;
    for (auto i : pick) lambda.push_back(maybe[i]);
    std::sort(lambda.begin(), lambda.end());
    out.push_back(std::move(lambda));
  }
  return out;
}

std::optional<LeafVerdict> classify_leaf(const Dtnu& d, const NodeState& s) {
  if (s.status == SimplifyStatus::violated) return LeafVerdict{Truth::no, {}};

  std::vector<TimepointId> remaining;
  for (TimepointId a : d.controllables) {
    if (!s.scheduled(a)) remaining.push_back(a);
  }
  if (s.status == SimplifyStatus::satisfied) {
    LeafVerdict v{Truth::yes, {}};
    for (TimepointId a : remaining) v.executions.emplace_back(a, s.time);
    return v;
  }

  const bool all_occurred =
      std::all_of(d.uncontrollables.begin(), d.uncontrollables.end(), [&](TimepointId u) { return s.scheduled(u); });
  if (!all_occurred) return std::nullopt;
  if (remaining.empty()) {
    throw std::logic_error("open constraints left after every timepoint was scheduled");
  }

  auto assignment = solve_dtn(Dtn{remaining, s.constraints, s.time});
  if (!assignment) return LeafVerdict{Truth::no, {}};
  LeafVerdict v{Truth::yes, {}};
  for (TimepointId a : remaining) v.executions.emplace_back(a, assignment->at(a));
  return v;
}

namespace {

struct SearchTimeout {};

class Explorer {
 public:
  Explorer(const Dtnu& d, const SolveConfig& cfg) : d_(d), cfg_(cfg), start_(Clock::now()) {
    if (cfg_.timeout) deadline_ = start_ + *cfg_.timeout;
  }

  void explore_dtnu(SearchNode& n, const NodeState& s, std::uint64_t anchor) {
    tick();
    if (n.parent && n.parent->truth != Truth::unknown) return;

    if (auto leaf = classify_leaf(d_, s)) {
      ++stats.leaves;
      n.leaf = true;
      n.final_executions = std::move(leaf->executions);
      assign_truth(n, leaf->truth);
      return;
    }

    const bool keyed = cfg_.symmetry_pruning && !s.executed_since_wait.empty();
    if (keyed && dead_[anchor].contains(s.executed_since_wait)) {
      ++stats.symmetric_cuts;
      assign_truth(n, Truth::no);
      return;
    }

    SearchNode& dor = n.add_child(NodeKind::d_or);
    dor.dor_depth = n.dor_depth + 1;
    dor.time = s.time;
    explore_dor(dor, s, anchor);

    if (n.truth == Truth::no) {
      n.children.clear();
      if (keyed) dead_[anchor].insert(s.executed_since_wait);
    }
  }

  void explore_dor(SearchNode& dor, const NodeState& s, std::uint64_t anchor) {
    const std::vector<Decision> decisions = ordered_decisions(dor, s);
    if (decisions.empty()) {
      assign_truth(dor, Truth::no);
      return;
    }
    for (const auto& dec : decisions) add_decision_child(dor, s, dec);
    for (std::size_t i = 0; i < decisions.size() && dor.truth == Truth::unknown; ++i) {
      explore_child(*dor.children[i], s, decisions[i], anchor);
    }
    keep_true_children(dor);
  }

  void add_decision_child(SearchNode& dor, const NodeState& s, const Decision& dec) {
    if (dec.is_wait()) {
      SearchNode& w = dor.add_child(NodeKind::wait);
      w.time = s.time;
      w.wait_duration = wait_duration(s.constraints, s.activations, s.time).value();
    } else {
      SearchNode& c = dor.add_child(NodeKind::dtnu);
      c.time = s.time;
      c.executed = dec.timepoint;
    }
  }

  void explore_child(SearchNode& child, const NodeState& s, const Decision& dec, std::uint64_t anchor) {
    if (dec.is_wait()) {
      explore_wait(child, s);
    } else {
      explore_dtnu(child, execute_transition(d_, s, dec.timepoint), anchor);
    }
    if (child.truth == Truth::no) child.children.clear();
  }

  void explore_wait(SearchNode& w, const NodeState& s) {
    tick();
    if (w.parent && w.parent->truth != Truth::unknown) return;
    SearchNode& wor = w.add_child(NodeKind::w_or);
    wor.time = s.time;
    for (auto& r : reactive_strategies(d_, s, w.wait_duration)) {
      SearchNode& a = wor.add_child(NodeKind::and_node);
      a.time = s.time;
      a.reactive = std::move(r);
    }
    for (std::size_t i = 0; i < wor.children.size() && wor.truth == Truth::unknown; ++i) {
      SearchNode& a = *wor.children[i];
      explore_and(a, s, w.wait_duration);
      if (a.truth == Truth::no) a.children.clear();
    }
    keep_true_children(wor);
  }

  void explore_and(SearchNode& a, const NodeState& s, const TimeValue& dt) {
    for (auto& lambda : enumerate_outcomes(d_, s, dt)) {
      SearchNode& c = a.add_child(NodeKind::dtnu);
      c.time = s.time + dt;
      c.occurred = std::move(lambda);
    }
    for (std::size_t i = 0; i < a.children.size() && a.truth == Truth::unknown; ++i) {
      SearchNode& c = *a.children[i];
      const std::uint64_t anchor = next_anchor_++;
      explore_dtnu(c, outcome_transition(d_, s, dt, a.reactive, c.occurred), anchor);
      dead_.erase(anchor);
      if (c.truth == Truth::no) c.children.clear();
    }
  }

  SearchStats stats;

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  using Clock = std::chrono::steady_clock;

  void tick() {
    ++stats.dtnu_nodes;
    if (deadline_ && Clock::now() > *deadline_) throw SearchTimeout{};
  }

  std::vector<Decision> ordered_decisions(const SearchNode& dor, const NodeState& s) {
    std::vector<Decision> decisions = expand_dor(d_, s);
    if (cfg_.heuristic && dor.dor_depth <= cfg_.heuristic_depth && decisions.size() > 1) {
      ++stats.heuristic_calls;
      const RankedDecisions ranked = rank_children(encode(d_, s), *cfg_.heuristic);
      if (ranked.degraded) {
        stats.heuristic_degraded = true;
      } else {
        auto rank = [&](const Decision& x) {
          return std::find(ranked.order.begin(), ranked.order.end(), x) - ranked.order.begin();
        };
        std::stable_sort(decisions.begin(), decisions.end(),
                         [&](const Decision& x, const Decision& y) { return rank(x) < rank(y); });
      }
    }
    if (cfg_.reorder) cfg_.reorder(decisions);
    return decisions;
  }

  static void keep_true_children(SearchNode& n) {
    if (n.truth != Truth::yes) return;
    std::erase_if(n.children, [](const auto& c) { return c->truth != Truth::yes; });
  }

  const Dtnu& d_;
  const SolveConfig& cfg_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::uint64_t next_anchor_ = 1;
  std::map<std::uint64_t, std::set<std::vector<TimepointId>>> dead_;
};

Verdict verdict_of(Truth t) {
  switch (t) {
    case Truth::yes:
      return Verdict::tdc;
    case Truth::no:
      return Verdict::not_tdc;
    case Truth::unknown:
      break;
  }
  return Verdict::timeout;
}

class Extractor {
 public:
  explicit Extractor(Strategy& out) : out_(out) {}

  std::size_t dtnu(const SearchNode& n) {
    if (n.leaf) {
      StrategyNode done;
      done.kind = StrategyNode::Kind::done;
      done.at = n.time;
      done.executions = n.final_executions;
      return out_.add(std::move(done));
    }
    const SearchNode& choice = true_child(only_child(n));
    if (choice.kind == NodeKind::dtnu) {
      StrategyNode exec;
      exec.kind = StrategyNode::Kind::execute;
      exec.at = n.time;
      exec.timepoint = choice.executed.value();
      const std::size_t self = out_.add(std::move(exec));
      const std::size_t next = dtnu(choice);
      out_.nodes[self].next = next;
      return self;
    }
    const SearchNode& conj = true_child(only_child(choice));
    StrategyNode wait;
    wait.kind = StrategyNode::Kind::wait;
    wait.at = n.time;
    wait.duration = choice.wait_duration;
    wait.reactive = conj.reactive;
    const std::size_t self = out_.add(std::move(wait));
    for (const auto& c : conj.children) {
      if (c->truth != Truth::yes) throw std::logic_error("true AND node with a non-true outcome");
      StrategyNode::Branch b;
      b.occurred = c->occurred;
      b.next = dtnu(*c);
      out_.nodes[self].branches.push_back(std::move(b));
    }
    return self;
  }

 private:
  static const SearchNode& only_child(const SearchNode& n) {
    if (n.children.empty()) throw std::logic_error("true internal node without children");
    return *n.children.front();
  }

  static const SearchNode& true_child(const SearchNode& n) {
    for (const auto& c : n.children) {
      if (c->truth == Truth::yes) return *c;
    }
    throw std::logic_error("true OR node without a true child");
  }

  Strategy& out_;
};

}  // namespace

Strategy extract_strategy(const SearchNode& root) {
  if (root.kind != NodeKind::dtnu || root.truth != Truth::yes) {
    throw std::invalid_argument("strategy extraction needs a true DTNU root");
  }
  Strategy s;
  s.root = Extractor(s).dtnu(root);
  return s;
}

SolveResult solve(const Dtnu& d, const SolveConfig& cfg) {
  Explorer ex(d, cfg);
  SearchNode root(NodeKind::dtnu);
  root.time = TimeValue(0);
  try {
    ex.explore_dtnu(root, root_state(d), 0);
  } catch (const SearchTimeout&) {
  }
  SolveResult r;
  r.verdict = verdict_of(root.truth);
  if (r.verdict == Verdict::tdc) r.strategy = extract_strategy(root);
  r.stats = ex.stats;
  r.stats.seconds = ex.elapsed();
  return r;
}

SolveResult solve_from(const Dtnu& d, const NodeState& state, const Decision& first, const SolveConfig& cfg) {
  Explorer ex(d, cfg);
  SearchNode dor(NodeKind::d_or);
  dor.time = state.time;
  dor.dor_depth = 1;
  try {
    ex.add_decision_child(dor, state, first);
    ex.explore_child(*dor.children.front(), state, first, 0);
  } catch (const SearchTimeout&) {
  }
  SolveResult r;
  r.verdict = verdict_of(dor.children.empty() ? Truth::unknown : dor.children.front()->truth);
  r.stats = ex.stats;
  r.stats.seconds = ex.elapsed();
  return r;
}

}  // namespace tdc
