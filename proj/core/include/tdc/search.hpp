#pragma once

#include "tdc/model.hpp"
#include "tdc/node_state.hpp"
#include "tdc/strategy.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tdc {

class HeuristicClient;

enum class Truth : std::uint8_t { unknown, yes, no };

enum class NodeKind : std::uint8_t { dtnu, d_or, w_or, wait, and_node };

/// Search tree node. Node states are not stored: they are recomputed on the
/// way down and discarded once a subtree is explored.
struct SearchNode {
  NodeKind kind = NodeKind::dtnu;
  Truth truth = Truth::unknown;
  SearchNode* parent = nullptr;
  std::vector<std::unique_ptr<SearchNode>> children;

  TimeValue time;
  std::optional<TimepointId> executed;     ///< dtnu child of a d-OR
  TimeValue wait_duration;                 ///< wait
  std::vector<ReactivePair> reactive;      ///< and
  std::vector<TimepointId> occurred;       ///< dtnu child of an and (sorted)
  bool leaf = false;
  std::vector<std::pair<TimepointId, TimeValue>> final_executions;  ///< true leaf
  int dor_depth = 0;  ///< number of d-OR ancestors

  explicit SearchNode(NodeKind k, SearchNode* p = nullptr) : kind(k), parent(p) {}

  SearchNode& add_child(NodeKind k);

  /// Monotone write: returns false when the value was already set to `t`,
  /// throws std::logic_error when it was set to the other value.
  bool set_truth(Truth t);
};

/// Sets `node` to `value` and pushes it up the tree: DTNU and WAIT parents
/// copy it, OR parents take True at once and False when every child is
/// False, AND parents the reverse. Stops at the first unchanged parent.
void assign_truth(SearchNode& node, Truth value);
void propagate_truth(SearchNode& node);

NodeState root_state(const Dtnu& d);
NodeState execute_transition(const Dtnu& d, const NodeState& s, TimepointId a);
/// DTNU child of an AND node: the wait [s.time, s.time + dt] ended, the
/// uncontrollables in `occurred` occurred and the reactive pairs whose
/// trigger occurred fired with it.
NodeState outcome_transition(const Dtnu& d, const NodeState& s, const TimeValue& dt,
                             std::span<const ReactivePair> reactive,
                             std::span<const TimepointId> occurred);

/// d-OR children in creation order: execute each unscheduled controllable,
/// then wait when eligible and a positive duration exists.
std::vector<Decision> expand_dor(const Dtnu& d, const NodeState& s);

/// Every subset of the reactive candidates, smallest first, ties ordered
/// lexicographically by name.
std::vector<std::vector<ReactivePair>> reactive_strategies(const Dtnu& d, const NodeState& s,
                                                           const TimeValue& dt);

/// H plus every subset of Z (smallest first, ties by name); each set sorted by id.
std::vector<std::vector<TimepointId>> enumerate_outcomes(const Dtnu& d, const NodeState& s,
                                                         const TimeValue& dt);

struct LeafVerdict {
  Truth truth = Truth::no;
  std::vector<std::pair<TimepointId, TimeValue>> executions;
};

/// Empty when the node still has pending uncontrollables and open constraints.
std::optional<LeafVerdict> classify_leaf(const Dtnu& d, const NodeState& s);

enum class Verdict : std::uint8_t { tdc, not_tdc, timeout };

const char* to_string(Verdict v);

struct SearchStats {
  std::uint64_t dtnu_nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t symmetric_cuts = 0;
  std::uint64_t heuristic_calls = 0;
  bool heuristic_degraded = false;
  double seconds = 0.0;
};

struct SolveConfig {
  std::optional<std::chrono::milliseconds> timeout;
  HeuristicClient* heuristic = nullptr;
  int heuristic_depth = 15;
  /// Applied to every d-OR's decisions after heuristic ordering.
  std::function<void(std::vector<Decision>&)> reorder;
  bool symmetry_pruning = true;
};

struct SolveResult {
  Verdict verdict = Verdict::timeout;
  std::optional<Strategy> strategy;
  SearchStats stats;
};

SolveResult solve(const Dtnu& d, const SolveConfig& cfg = {});

/// Explores only the subtree under one d-OR decision taken at `state`.
/// Used by labeling; no strategy is returned.
SolveResult solve_from(const Dtnu& d, const NodeState& state, const Decision& first,
                       const SolveConfig& cfg = {});

/// Requires root.truth == yes.
Strategy extract_strategy(const SearchNode& root);

}  // namespace tdc
