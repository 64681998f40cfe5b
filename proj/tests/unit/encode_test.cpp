#include "fixtures.hpp"

#include <tdc/encode.hpp>
#include <tdc/heuristic_client.hpp>
#include <tdc/search.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace tdc;
using namespace tdc::testing;

TEST(DistanceClass, PartitionsTheUnitInterval) {
  EXPECT_EQ(distance_class(TimeValue(0)), 0);
  EXPECT_EQ(distance_class(TimeValue(1, 10)), 1);
  EXPECT_EQ(distance_class(TimeValue(1, 4)), 2);
  EXPECT_EQ(distance_class(TimeValue(99, 100)), 9);
  EXPECT_EQ(distance_class(TimeValue(1)), 9);
  EXPECT_EQ(distance_class(TimeValue(100) / TimeValue(100)), 9);
  EXPECT_EQ(distance_class(0.25), 2);
  EXPECT_EQ(distance_class(1.0), 9);
  for (int k = 0; k < 100; ++k) {
    const int c = distance_class(TimeValue(k, 100));
    EXPECT_EQ(c, k / 10);
  }
}

TEST(DistanceClass, RejectsOutOfRange) {
  EXPECT_THROW(distance_class(TimeValue(-1, 10)), std::out_of_range);
  EXPECT_THROW(distance_class(TimeValue(11, 10)), std::out_of_range);
  EXPECT_THROW(distance_class(1.5), std::out_of_range);
}

TEST(Encode, GammaPrimeLayout) {
  const Dtnu d = gamma_prime();
  const GraphEncoding g = encode(d, root_state(d));
  ASSERT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.node_features[0][node_feature::controllable], 1.0);
  EXPECT_EQ(g.node_features[1][node_feature::controllable], 1.0);
  EXPECT_EQ(g.node_features[2][node_feature::uncontrollable], 1.0);
  EXPECT_EQ(g.node_features[3][node_feature::wait], 1.0);
  EXPECT_EQ(g.active, (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(g.decisions.at(0), Decision::execute(0));
  EXPECT_EQ(g.decisions.at(1), Decision::execute(1));
  EXPECT_EQ(g.decisions.at(3), Decision::wait());
  EXPECT_EQ(g.d_max, TimeValue(6));
  // Three distance conjuncts in both directions plus one activation edge.
  EXPECT_EQ(g.edges.size(), 7u);
  EXPECT_EQ(std::count_if(g.edge_features.begin(), g.edge_features.end(),
                          [](const auto& row) { return row[edge_feature::activation] == 1.0; }),
            1);
}

TEST(Encode, FeaturesAreNormalisedOneHots) {
  GenParams p;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Dtnu d = generate_dtnu(p, derive_seed(3, s));
    const GraphEncoding g = encode(d, root_state(d));
    ASSERT_EQ(g.edges.size(), g.edge_features.size());
    for (const auto& row : g.node_features) {
      ASSERT_EQ(row.size(), node_feature::width);
      EXPECT_EQ(std::count(row.begin(), row.end(), 1.0), 1);
    }
    for (const auto& row : g.edge_features) {
      ASSERT_EQ(row.size(), edge_feature::width);
      for (double x : row) EXPECT_TRUE(x == 0.0 || x == 1.0);
      EXPECT_EQ(std::count(row.begin(), row.begin() + 4, 1.0), 1);
      EXPECT_EQ(std::count(row.begin() + edge_feature::lower_class, row.begin() + edge_feature::upper_class, 1.0), 1);
      EXPECT_EQ(std::count(row.begin() + edge_feature::upper_class, row.begin() + edge_feature::lower_negative, 1.0), 1);
    }
    for (auto [s2, t] : g.edges) {
      EXPECT_LT(s2, g.node_count());
      EXPECT_LT(t, g.node_count());
    }
    EXPECT_TRUE(std::is_sorted(g.active.begin(), g.active.end()));
    EXPECT_EQ(g.decisions.size(), g.active.size());
  }
}

TEST(Encode, MultiConjunctDisjunctGetsAnIntermediary) {
  Dtnu d;
  const auto a = d.add_controllable("a");
  const auto b = d.add_controllable("b");
  d.constraints.push_back({Conjunct::bounded(a, iv(0, 4)), Conjunct::distance(b, a, iv(1, 2))});
  const GraphEncoding g = encode(d, root_state(d));
  ASSERT_EQ(g.node_count(), 4u);  // a, b, wait, intermediary
  EXPECT_EQ(g.node_features[3][node_feature::intermediary], 1.0);
  EXPECT_EQ(g.edges.size(), 8u);
  for (const auto& row : g.edge_features) EXPECT_EQ(row[edge_feature::disjunction], 1.0);
}

TEST(Encode, DegenerateBoundsUseClassZero) {
  Dtnu d;
  const auto a = d.add_controllable("a");
  d.constraints.push_back({Conjunct::bounded(a, iv(0, 0))});
  const GraphEncoding g = encode(d, root_state(d));
  EXPECT_TRUE(g.degenerate);
  for (const auto& row : g.edge_features) {
    EXPECT_EQ(row[edge_feature::lower_class], 1.0);
    EXPECT_EQ(row[edge_feature::upper_class], 1.0);
  }
}

TEST(Encode, InfiniteBoundsAreFlagged) {
  const Dtnu d = gamma_prime();
  const GraphEncoding g = encode(d, root_state(d));
  const auto& row = g.edge_features[0];  // a1 - u1 >= 1, edge u1 -> a1
  EXPECT_EQ(row[edge_feature::unbounded], 1.0);
  EXPECT_EQ(row[edge_feature::upper_class + 9], 1.0);
}

namespace {

// Same instance with timepoints declared in a different order and renamed.
Dtnu shuffled_copy(const Dtnu& d, std::mt19937_64& rng) {
  std::vector<TimepointId> order(d.size());
  for (TimepointId i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Dtnu out;
  std::vector<TimepointId> map(d.size());
  for (TimepointId old : order) {
    const std::string name = "t" + std::to_string(out.size());
    map[old] = d.is_controllable(old) ? out.add_controllable(name) : out.add_uncontrollable(name);
  }
  auto remap = [&](Conjunct c) {
    if (!c.is_literal()) {
      c.first = map[c.first];
      if (c.is_distance()) c.second = map[c.second];
    }
    return c;
  };
  for (const auto& dj : d.constraints) {
    Disjunct nd;
    for (const auto& c : dj) nd.push_back(remap(c));
    out.constraints.push_back(nd);
  }
  std::shuffle(out.constraints.begin(), out.constraints.end(), rng);
  for (auto l : d.links) {
    l.source = map[l.source];
    l.target = map[l.target];
    out.links.push_back(l);
  }
  for (auto a : d.activated) {
    a.target = map[a.target];
    out.activated.push_back(a);
  }
  out.validate();
  return out;
}

}  // namespace

TEST(Encode, HashIsInvariantUnderRenumbering) {
  std::mt19937_64 rng(99);
  GenParams p;
  p.min_controllables = 5;
  p.max_controllables = 8;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Dtnu d = generate_dtnu(p, derive_seed(17, s));
    const Dtnu e = shuffled_copy(d, rng);
    EXPECT_EQ(canonical_hash(encode(d, root_state(d))), canonical_hash(encode(e, root_state(e))));
  }
  const Dtnu a = generate_dtnu(p, 1);
  const Dtnu b = generate_dtnu(p, 2);
  EXPECT_NE(canonical_hash(encode(a, root_state(a))), canonical_hash(encode(b, root_state(b))));
}

TEST(RankChildren, SortsByProbability) {
  const Dtnu d = gamma_prime();
  const GraphEncoding g = encode(d, root_state(d));
  HeuristicRanking r;
  r.probabilities = {{0, 0.2}, {1, 0.9}, {3, 0.5}};
  EXPECT_EQ(order_by_probability(g, r),
            (std::vector<Decision>{Decision::execute(1), Decision::wait(), Decision::execute(0)}));
}

TEST(RankChildren, TiesKeepCreationOrder) {
  const Dtnu d = gamma_prime();
  const GraphEncoding g = encode(d, root_state(d));
  HeuristicRanking r;
  r.probabilities = {{0, 0.5}, {1, 0.5}, {3, 0.5}};
  EXPECT_EQ(order_by_probability(g, r),
            (std::vector<Decision>{Decision::execute(0), Decision::execute(1), Decision::wait()}));
}

namespace {

struct DeadClient : HeuristicClient {
  std::optional<HeuristicRanking> query(const GraphEncoding&) override { return std::nullopt; }
};

}  // namespace

TEST(RankChildren, DeadClientFallsBack) {
  const Dtnu d = gamma_prime();
  const GraphEncoding g = encode(d, root_state(d));
  DeadClient client;
  const RankedDecisions r = rank_children(g, client);
  EXPECT_TRUE(r.degraded);
  EXPECT_EQ(r.order, (std::vector<Decision>{Decision::execute(0), Decision::execute(1), Decision::wait()}));
}
