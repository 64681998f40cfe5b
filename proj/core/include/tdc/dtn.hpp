#pragma once

#include "tdc/model.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tdc {

/// Disjunctive temporal network without uncertainty: every variable is
/// controllable and must be scheduled no earlier than `floor`.
struct Dtn {
  std::vector<TimepointId> variables;
  std::vector<Disjunct> disjuncts;
  TimeValue floor;
};

using DtnAssignment = std::map<TimepointId, TimeValue>;

/// Picks one conjunct per disjunct depth-first, keeping the chosen
/// difference constraints closed under shortest paths so that an
/// inconsistent choice is rejected as soon as it closes a negative cycle.
/// On success the earliest solution of the final system is returned.
/// Empty when no selection is consistent.
std::optional<DtnAssignment> solve_dtn(const Dtn& problem);

}  // namespace tdc
