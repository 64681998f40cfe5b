#pragma once

#include "tdc/model.hpp"
#include "tdc/node_state.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace tdc {

class HeuristicClient;

/// Node feature columns (one-hot).
namespace node_feature {
inline constexpr std::size_t controllable = 0;
inline constexpr std::size_t uncontrollable = 1;
inline constexpr std::size_t intermediary = 2;
inline constexpr std::size_t wait = 3;
inline constexpr std::size_t width = 4;
}  // namespace node_feature

/// Edge feature columns: edge type one-hot, lower-bound class one-hot,
/// upper-bound class one-hot, sign flags, unbounded flag.
namespace edge_feature {
inline constexpr std::size_t constraint = 0;
inline constexpr std::size_t disjunction = 1;
inline constexpr std::size_t contingency = 2;
inline constexpr std::size_t activation = 3;
inline constexpr std::size_t lower_class = 4;
inline constexpr std::size_t upper_class = 14;
inline constexpr std::size_t lower_negative = 24;
inline constexpr std::size_t upper_negative = 25;
inline constexpr std::size_t unbounded = 26;
inline constexpr std::size_t width = 27;
}  // namespace edge_feature

inline constexpr int kDistanceClasses = 10;

struct GraphEncoding {
  std::vector<std::vector<double>> node_features;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< directed (src, dst)
  std::vector<std::vector<double>> edge_features;
  std::vector<std::size_t> active;  ///< ascending; creation order of decisions
  std::map<std::size_t, Decision> decisions;
  TimeValue d_max;
  bool degenerate = false;  ///< d_max == 0, every class is 0

  std::size_t node_count() const { return node_features.size(); }
};

/// Class k covers [k/10, (k+1)/10), with 1.0 folded into class 9.
/// Throws std::out_of_range outside [0, 1].
int distance_class(const TimeValue& normalized);
int distance_class(double normalized);

/// Graph view of a DTNU node about to expand its d-OR: times relative to
/// the node, scaled by the largest finite bound magnitude.
GraphEncoding encode(const Dtnu& d, const NodeState& state);

/// Weisfeiler-Lehman style hash, invariant under node renumbering.
std::uint64_t canonical_hash(const GraphEncoding& g);

struct HeuristicRanking {
  std::map<std::size_t, double> probabilities;  ///< active node -> [0, 1]
};

struct RankedDecisions {
  std::vector<Decision> order;
  bool degraded = false;  ///< the client failed; creation order returned
};

/// Active decisions by descending probability, ties in creation order.
RankedDecisions rank_children(const GraphEncoding& g, HeuristicClient& client);

/// Pure ordering step of rank_children.
std::vector<Decision> order_by_probability(const GraphEncoding& g, const HeuristicRanking& ranking);

}  // namespace tdc
