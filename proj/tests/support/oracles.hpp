#pragma once

#include <tdc/dtn.hpp>
#include <tdc/model.hpp>
#include <tdc/search.hpp>

#include <map>
#include <memory>
#include <random>
#include <vector>

namespace tdc::testing {

/// Independent disjunct evaluator over a full assignment.
bool satisfies(const std::vector<Disjunct>& constraints, const std::map<TimepointId, TimeValue>& values);

/// Brute force: every conjunct selection, each checked with Bellman-Ford.
bool oracle_dtn_feasible(const Dtn& p);

/// Small random DTN: up to `max_vars` variables, up to 3 disjuncts of up to
/// 3 conjuncts, integer bounds within [-10, 10] (bounded conjuncts [0, 10]).
Dtn random_dtn(std::mt19937_64& rng, int max_vars = 4);

/// Random tree shaped like the search tree (DTNU -> d-OR -> {DTNU, WAIT},
/// WAIT -> w-OR -> AND -> DTNU) with about `size` nodes. Leaves are DTNU nodes.
std::unique_ptr<SearchNode> random_truth_tree(std::mt19937_64& rng, std::size_t size);

/// Collects the leaves of a tree.
std::vector<SearchNode*> leaves_of(SearchNode& root);

/// Exact OR/AND value of a node from its leaves (all leaves must be set).
bool evaluate_tree(const SearchNode& n);

/// Checks the OR/AND invariants at every node; returns the number of
/// offending nodes.
std::size_t truth_invariant_violations(const SearchNode& root);

std::size_t count_nodes(const SearchNode& root);

}  // namespace tdc::testing
