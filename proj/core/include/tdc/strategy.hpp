#pragma once

#include "tdc/model.hpp"
#include "tdc/propagate.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdc {

inline constexpr std::string_view kStrategyFormat = "tdc-strategy/1";

/// One step of an executable decision tree.
struct StrategyNode {
  enum class Kind : std::uint8_t { execute, wait, done };

  struct Branch {
    std::vector<TimepointId> occurred;  ///< sorted by id
    std::size_t next = 0;

    friend bool operator==(const Branch&, const Branch&) = default;
  };

  Kind kind = Kind::done;
  TimeValue at;  ///< execute: execution time; wait: start of the wait

  // execute
  TimepointId timepoint = 0;
  std::size_t next = 0;

  // wait
  TimeValue duration;
  std::vector<ReactivePair> reactive;
  std::vector<Branch> branches;

  // done: remaining controllables and when to execute them
  std::vector<std::pair<TimepointId, TimeValue>> executions;

  friend bool operator==(const StrategyNode&, const StrategyNode&) = default;
};

/// Nodes are stored flat; `next` / `Branch::next` index into `nodes`.
struct Strategy {
  std::vector<StrategyNode> nodes;
  std::size_t root = 0;

  const StrategyNode& at(std::size_t i) const { return nodes.at(i); }
  std::size_t add(StrategyNode n) {
    nodes.push_back(std::move(n));
    return nodes.size() - 1;
  }

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Nested JSON using timepoint names; see README for the layout.
std::string serialize_strategy(const Strategy& s, const Dtnu& d);
Strategy parse_strategy(std::string_view text, const Dtnu& d);

}  // namespace tdc
