#include "fixtures.hpp"
#include "oracles.hpp"

#include <tdc/search.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace tdc;
using namespace tdc::testing;

namespace {

NodeState state_at(std::int64_t t, std::vector<Disjunct> c, ActivationSet b = {}) {
  NodeState s;
  s.time = tv(t);
  auto simp = simplify(std::move(c));
  s.constraints = std::move(simp.constraints);
  s.status = simp.status;
  s.activations = std::move(b);
  return s;
}

// u1 activated on [0, 4]; a1 must execute exactly when u1 occurs.
Dtnu reactive_instance() {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  d.activated.push_back({u1, {iv(0, 4)}});
  d.constraints.push_back({Conjunct::distance(u1, a1, iv(0, 0))});
  d.validate();
  return d;
}

}  // namespace

TEST(ExpandDor, TwoControllablesAndAWait) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto a2 = d.add_controllable("a2");
  const auto s = state_at(0, {{Conjunct::bounded(a1, iv(2, 5))}, {Conjunct::distance(a2, a1, iv(0, 1))}});
  EXPECT_EQ(expand_dor(d, s), (std::vector<Decision>{Decision::execute(a1), Decision::execute(a2), Decision::wait()}));
}

TEST(ExpandDor, OneControllableNoWait) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto a2 = d.add_controllable("a2");
  auto s = state_at(0, {{Conjunct::distance(a2, a1, iv(0, 1))}});
  s.memory[a1] = ExecutionRecord::at(tv(0));
  EXPECT_EQ(expand_dor(d, s), (std::vector<Decision>{Decision::execute(a2)}));
}

TEST(ExpandDor, NoPositiveWaitSuppressesTheWait) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto s = state_at(3, {{Conjunct::bounded(a1, iv(0, 3))}});
  EXPECT_EQ(expand_dor(d, s), (std::vector<Decision>{Decision::execute(a1)}));
}

TEST(ReactiveStrategies, EmptyPhi) {
  const Dtnu d = gamma_prime();
  const auto s = root_state(d);
  const auto r = reactive_strategies(d, s, tv(1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].empty());
}

TEST(ReactiveStrategies, SingleCandidate) {
  const Dtnu d = reactive_instance();
  const auto r = reactive_strategies(d, root_state(d), tv(4));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].empty());
  EXPECT_EQ(r[1], (std::vector<ReactivePair>{{1, 0}}));
}

TEST(ReactiveStrategies, TwoCandidatesGiveFourSubsets) {
  Dtnu d;
  const auto a2 = d.add_controllable("a2");
  const auto a1 = d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  d.activated.push_back({u1, {iv(0, 4)}});
  const auto s = state_at(0, {{Conjunct::distance(u1, a2, iv(0, 3))}, {Conjunct::distance(u1, a1, iv(0, 3))}},
                          {{u1, {iv(0, 4)}}});
  const auto r = reactive_strategies(d, s, tv(4));
  ASSERT_EQ(r.size(), 4u);
  EXPECT_TRUE(r[0].empty());
  EXPECT_EQ(r[1], (std::vector<ReactivePair>{{u1, a1}}));
  EXPECT_EQ(r[2], (std::vector<ReactivePair>{{u1, a2}}));
  EXPECT_EQ(r[3], (std::vector<ReactivePair>{{u1, a1}, {u1, a2}}));
}

TEST(ReactiveStrategies, TriggerMustBeAbleToOccur) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  d.activated.push_back({u1, {iv(5, 8)}});
  const auto s = state_at(0, {{Conjunct::distance(u1, a1, iv(0, 3))}}, {{u1, {iv(5, 8)}}});
  EXPECT_EQ(reactive_strategies(d, s, tv(2)).size(), 1u);
  EXPECT_EQ(reactive_strategies(d, s, tv(5)).size(), 2u);
}

TEST(EnumerateOutcomes, CertainPlusOptional) {
  Dtnu d;
  d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  const auto u2 = d.add_uncontrollable("u2");
  const auto s = state_at(0, {}, {{u1, {iv(0, 10)}}, {u2, {iv(0, 1)}}});
  const auto out = enumerate_outcomes(d, s, tv(2));
  EXPECT_EQ(out, (std::vector<std::vector<TimepointId>>{{u2}, {u1, u2}}));
}

TEST(EnumerateOutcomes, OnlyCertain) {
  Dtnu d;
  d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  const auto s = state_at(0, {}, {{u1, {iv(0, 1)}}});
  EXPECT_EQ(enumerate_outcomes(d, s, tv(1)), (std::vector<std::vector<TimepointId>>{{u1}}));
}

TEST(EnumerateOutcomes, TwoOptionalGiveFour) {
  Dtnu d;
  d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  const auto u2 = d.add_uncontrollable("u2");
  const auto s = state_at(0, {}, {{u1, {iv(0, 10)}}, {u2, {iv(1, 5)}}});
  const auto out = enumerate_outcomes(d, s, tv(2));
  EXPECT_EQ(out, (std::vector<std::vector<TimepointId>>{{}, {u1}, {u2}, {u1, u2}}));
}

TEST(EnumerateOutcomes, NotYetOpenWindowsAreExcluded) {
  Dtnu d;
  d.add_controllable("a1");
  const auto u1 = d.add_uncontrollable("u1");
  const auto s = state_at(0, {}, {{u1, {iv(5, 10)}}});
  EXPECT_EQ(enumerate_outcomes(d, s, tv(2)), (std::vector<std::vector<TimepointId>>{{}}));
}

TEST(OutcomeTransition, TightBoundsAndRemainingWindows) {
  const Dtnu d = gamma_prime();
  const auto s = root_state(d);
  // u1 occurred during [0, 1]: a1 >= 1 + 1, a2 in [1 + 0, 0 + 6].
  const TimepointId occurred[] = {2};
  const auto next = outcome_transition(d, s, tv(1), {}, occurred);
  EXPECT_EQ(next.time, tv(1));
  EXPECT_TRUE(next.activations.empty());
  EXPECT_EQ(next.memory.at(2), ExecutionRecord::within(iv(0, 1)));
  ASSERT_EQ(next.constraints.size(), 3u);
  EXPECT_EQ(next.constraints[0][0], Conjunct::bounded(0, iv_inf(2)));
  EXPECT_EQ(next.constraints[2][0], Conjunct::bounded(1, iv(1, 6)));
}

TEST(OutcomeTransition, CertainTimepointMustOccur) {
  const Dtnu d = gamma_prime();
  EXPECT_THROW(outcome_transition(d, root_state(d), tv(1), {}, {}), std::logic_error);
}

TEST(ClassifyLeaf, ClosedLeafIsTrue) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  auto s = state_at(2, {});
  s.memory[a1] = ExecutionRecord::at(tv(1));
  const auto v = classify_leaf(d, s);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->truth, Truth::yes);
  EXPECT_TRUE(v->executions.empty());
}

TEST(ClassifyLeaf, DtnBelowTheFloorIsFalse) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto v = classify_leaf(d, state_at(2, {{Conjunct::bounded(a1, iv(0, 1))}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->truth, Truth::no);
}

TEST(ClassifyLeaf, DtnPicksTheEarliestPoint) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto v = classify_leaf(d, state_at(0, {{Conjunct::bounded(a1, iv(2, 3))}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->truth, Truth::yes);
  EXPECT_EQ(v->executions, (std::vector<std::pair<TimepointId, TimeValue>>{{a1, tv(2)}}));
}

TEST(ClassifyLeaf, ViolatedComesFirst) {
  const Dtnu d = gamma_prime();
  const auto v = classify_leaf(d, state_at(0, {{Conjunct::falsity()}}, {{2, {iv(0, 1)}}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->truth, Truth::no);
}

TEST(ClassifyLeaf, PendingUncontrollableIsNotALeaf) {
  const Dtnu d = gamma_prime();
  EXPECT_FALSE(classify_leaf(d, root_state(d)).has_value());
}

TEST(TruthPropagation, AndTakesFalseAtOnce) {
  SearchNode a(NodeKind::and_node);
  SearchNode& c1 = a.add_child(NodeKind::dtnu);
  a.add_child(NodeKind::dtnu);
  assign_truth(c1, Truth::no);
  EXPECT_EQ(a.truth, Truth::no);
}

TEST(TruthPropagation, OrTakesTrueAtOnce) {
  SearchNode o(NodeKind::d_or);
  o.add_child(NodeKind::dtnu);
  SearchNode& c2 = o.add_child(NodeKind::dtnu);
  assign_truth(c2, Truth::yes);
  EXPECT_EQ(o.truth, Truth::yes);
}

TEST(TruthPropagation, OrWaitsForEveryFalse) {
  SearchNode root(NodeKind::dtnu);
  SearchNode& o = root.add_child(NodeKind::d_or);
  SearchNode& c1 = o.add_child(NodeKind::dtnu);
  SearchNode& c2 = o.add_child(NodeKind::wait);
  assign_truth(c1, Truth::no);
  EXPECT_EQ(o.truth, Truth::unknown);
  EXPECT_EQ(root.truth, Truth::unknown);
  assign_truth(c2, Truth::no);
  EXPECT_EQ(o.truth, Truth::no);
  EXPECT_EQ(root.truth, Truth::no);
}

TEST(TruthPropagation, AndWaitsForEveryTrue) {
  SearchNode w(NodeKind::wait);
  SearchNode& o = w.add_child(NodeKind::w_or);
  SearchNode& a = o.add_child(NodeKind::and_node);
  SearchNode& c1 = a.add_child(NodeKind::dtnu);
  SearchNode& c2 = a.add_child(NodeKind::dtnu);
  assign_truth(c1, Truth::yes);
  EXPECT_EQ(a.truth, Truth::unknown);
  assign_truth(c2, Truth::yes);
  EXPECT_EQ(w.truth, Truth::yes);
}

TEST(TruthPropagation, ValuesNeverFlip) {
  SearchNode n(NodeKind::dtnu);
  EXPECT_TRUE(n.set_truth(Truth::yes));
  EXPECT_FALSE(n.set_truth(Truth::yes));
  EXPECT_THROW(n.set_truth(Truth::no), std::logic_error);
  EXPECT_THROW(n.set_truth(Truth::unknown), std::logic_error);
}

TEST(TruthPropagation, RandomTreesKeepTheInvariants) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    auto root = random_truth_tree(rng, 500);
    auto leaves = leaves_of(*root);
    std::shuffle(leaves.begin(), leaves.end(), rng);
    for (SearchNode* leaf : leaves) assign_truth(*leaf, rng() % 2 ? Truth::yes : Truth::no);
    EXPECT_EQ(truth_invariant_violations(*root), 0u);
    EXPECT_EQ(root->truth == Truth::yes, evaluate_tree(*root));
  }
}

TEST(Solve, SingleExecute) {
  const SolveResult r = solve(single_execute());
  ASSERT_EQ(r.verdict, Verdict::tdc);
  ASSERT_TRUE(r.strategy.has_value());
  const StrategyNode& root = r.strategy->at(r.strategy->root);
  EXPECT_EQ(root.kind, StrategyNode::Kind::done);
  EXPECT_EQ(root.executions, (std::vector<std::pair<TimepointId, TimeValue>>{{0, tv(0)}}));
}

TEST(Solve, GammaPrimeIsNotTdc) {
  const SolveResult r = solve(gamma_prime());
  EXPECT_EQ(r.verdict, Verdict::not_tdc);
  EXPECT_FALSE(r.strategy.has_value());
}

TEST(Solve, IncompatibleDisjunctsAreNotTdc) {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  d.constraints.push_back({Conjunct::bounded(a1, iv(2, 3))});
  d.constraints.push_back({Conjunct::bounded(a1, iv(5, 6))});
  EXPECT_EQ(solve(d).verdict, Verdict::not_tdc);
}

TEST(Solve, ReactiveExecutionIsFound) {
  const SolveResult r = solve(reactive_instance());
  ASSERT_EQ(r.verdict, Verdict::tdc);
  const StrategyNode& root = r.strategy->at(r.strategy->root);
  ASSERT_EQ(root.kind, StrategyNode::Kind::wait);
  EXPECT_EQ(root.duration, tv(4));
  EXPECT_EQ(root.reactive, (std::vector<ReactivePair>{{1, 0}}));
  ASSERT_EQ(root.branches.size(), 1u);
  EXPECT_EQ(root.branches[0].occurred, (std::vector<TimepointId>{1}));
}

TEST(Solve, WaitWithTwoOutcomes) {
  // u1 on [0, 4], a1 no earlier than u1 and at most 10 after it, a2 in [2, 20].
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto a2 = d.add_controllable("a2");
  const auto u1 = d.add_uncontrollable("u1");
  d.activated.push_back({u1, {iv(0, 4)}});
  d.constraints.push_back({Conjunct::distance(a1, u1, iv(0, 10))});
  d.constraints.push_back({Conjunct::bounded(a2, iv(2, 20))});
  d.validate();
  const SolveResult r = solve(d);
  ASSERT_EQ(r.verdict, Verdict::tdc);
  const StrategyNode& root = r.strategy->at(r.strategy->root);
  ASSERT_EQ(root.kind, StrategyNode::Kind::wait);
  EXPECT_EQ(root.duration, tv(2));
  ASSERT_EQ(root.branches.size(), 2u);
  EXPECT_TRUE(root.branches[0].occurred.empty());
  EXPECT_EQ(root.branches[1].occurred, (std::vector<TimepointId>{u1}));
}

namespace {

// a3 activates u1; a1 can never satisfy both bounded disjuncts, so every
// ordering of a2 and a3 is explored and fails.
Dtnu symmetric_instance() {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  d.add_controllable("a2");
  const auto a3 = d.add_controllable("a3");
  const auto u1 = d.add_uncontrollable("u1");
  d.links.push_back({a3, u1, {iv(1, 2)}});
  d.constraints.push_back({Conjunct::bounded(a1, iv(0, 1))});
  d.constraints.push_back({Conjunct::bounded(a1, iv(3, 4))});
  d.validate();
  return d;
}

}  // namespace

TEST(Solve, SymmetricSubtreesAreCut) {
  const Dtnu d = symmetric_instance();
  const SolveResult pruned = solve(d);
  SolveConfig full;
  full.symmetry_pruning = false;
  const SolveResult unpruned = solve(d, full);
  EXPECT_EQ(pruned.verdict, Verdict::not_tdc);
  EXPECT_EQ(unpruned.verdict, Verdict::not_tdc);
  EXPECT_GT(pruned.stats.symmetric_cuts, 0u);
  EXPECT_LT(pruned.stats.dtnu_nodes, unpruned.stats.dtnu_nodes);
}

TEST(Solve, PruningNeverChangesTheVerdict) {
  const GenParams p = small_params(3, 5, 0);
  SolveConfig off;
  off.symmetry_pruning = false;
  off.timeout = std::chrono::milliseconds(1000);
  SolveConfig on;
  on.timeout = std::chrono::milliseconds(1000);
  int compared = 0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const Dtnu d = generate_dtnu(p, derive_seed(123, i));
    const auto a = solve(d, on);
    const auto b = solve(d, off);
    if (a.verdict == Verdict::timeout || b.verdict == Verdict::timeout) continue;
    ++compared;
    EXPECT_EQ(a.verdict, b.verdict) << "instance " << i;
  }
  EXPECT_GT(compared, 10);
}

TEST(Solve, TimeoutIsReported) {
  const GenParams p = small_params(18, 20, 0);
  SolveConfig cfg;
  cfg.timeout = std::chrono::milliseconds(50);
  int timeouts = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const SolveResult r = solve(generate_dtnu(p, derive_seed(5, i)), cfg);
    EXPECT_LT(r.stats.seconds, 2.0);
    if (r.verdict == Verdict::timeout) {
      ++timeouts;
      EXPECT_FALSE(r.strategy.has_value());
    }
  }
  EXPECT_GT(timeouts, 0);
}

TEST(Solve, IsDeterministic) {
  const GenParams p = small_params(4, 6, 0);
  SolveConfig cfg;
  cfg.timeout = std::chrono::milliseconds(3000);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Dtnu d = generate_dtnu(p, derive_seed(9, i));
    const auto a = solve(d, cfg);
    const auto b = solve(d, cfg);
    if (a.verdict == Verdict::timeout || b.verdict == Verdict::timeout) continue;
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.strategy, b.strategy);
    EXPECT_EQ(a.stats.dtnu_nodes, b.stats.dtnu_nodes);
  }
}
