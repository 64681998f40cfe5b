#include "tdc/encode.hpp"

#include "tdc/heuristic_client.hpp"
#include "tdc/waits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace tdc {

int distance_class(const TimeValue& normalized) {
  if (normalized.is_negative() || TimeValue(1) < normalized) {
    throw std::out_of_range("normalized distance " + normalized.to_string() + " outside [0, 1]");
  }
  return static_cast<int>(std::min<std::int64_t>((normalized * TimeValue(10)).floor(), kDistanceClasses - 1));
}

int distance_class(double normalized) {
  if (!(normalized >= 0.0 && normalized <= 1.0)) {
    throw std::out_of_range("normalized distance " + std::to_string(normalized) + " outside [0, 1]");
  }
  return std::min(static_cast<int>(std::floor(normalized * 10.0)), kDistanceClasses - 1);
}

namespace {

class Builder {
 public:
  Builder(const Dtnu& d, const NodeState& s) : d_(d), s_(s) {}

  GraphEncoding build() {
    scan_d_max();
    g_.degenerate = g_.d_max.is_zero();

    std::map<TimepointId, std::size_t> index;
    for (TimepointId a : d_.controllables) {
      if (s_.scheduled(a)) continue;
      index[a] = add_node(node_feature::controllable);
      g_.active.push_back(index[a]);
      g_.decisions[index[a]] = Decision::execute(a);
    }
    for (TimepointId u : d_.uncontrollables) {
      if (!s_.scheduled(u)) index[u] = add_node(node_feature::uncontrollable);
    }
    std::optional<std::size_t> wait;
    if (wait_eligible(s_.constraints, s_.activations)) {
      wait = add_node(node_feature::wait);
      g_.active.push_back(*wait);
      g_.decisions[*wait] = Decision::wait();
    }

    auto endpoints = [&](const Conjunct& c) -> std::pair<std::size_t, std::size_t> {
      // (rhs, lhs): the conjunct reads lhs - rhs in interval.
      if (c.is_bounded()) return {wait.value(), index.at(c.first)};
      return {index.at(c.second), index.at(c.first)};
    };
    auto relative = [&](const Conjunct& c) {
      if (c.is_bounded()) return Interval{c.interval.lo - s_.time, c.interval.hi - s_.time};
      return c.interval;
    };

    for (const auto& dj : s_.constraints) {
      std::vector<const Conjunct*> live;
      for (const auto& c : dj) {
        if (!c.is_literal()) live.push_back(&c);
      }
      if (live.empty()) continue;
      if (live.size() == 1) {
        const Conjunct& c = *live.front();
        auto [rhs, lhs] = endpoints(c);
        const Interval iv = relative(c);
        add_edge(rhs, lhs, edge_feature::constraint, iv);
        if (c.is_distance()) add_edge(lhs, rhs, edge_feature::constraint, negate(iv));
        continue;
      }
      const std::size_t hub = add_node(node_feature::intermediary);
      for (const Conjunct* c : live) {
        auto [rhs, lhs] = endpoints(*c);
        const Interval iv = relative(*c);
        add_edge(rhs, hub, edge_feature::disjunction, iv);
        add_edge(hub, rhs, edge_feature::disjunction, iv);
        add_edge(lhs, hub, edge_feature::disjunction, negate(iv));
        add_edge(hub, lhs, edge_feature::disjunction, negate(iv));
      }
    }

    for (const auto& link : d_.links) {
      if (s_.scheduled(link.source) || s_.scheduled(link.target)) continue;
      for (const auto& iv : link.intervals) {
        add_edge(index.at(link.source), index.at(link.target), edge_feature::contingency, iv);
        add_edge(index.at(link.target), index.at(link.source), edge_feature::contingency, negate(iv));
      }
    }

    for (const auto& [u, windows] : s_.activations) {
      for (const auto& w : windows) {
        add_edge(wait.value(), index.at(u), edge_feature::activation,
                 {w.lo - s_.time, w.hi - s_.time});
      }
    }
    return std::move(g_);
  }

 private:
  static Interval negate(const Interval& iv) { return {-iv.hi, -iv.lo}; }

  void consider(const TimeValue& v) {
    if (v.is_finite() && g_.d_max < v.abs()) g_.d_max = v.abs();
  }

  void scan_d_max() {
    g_.d_max = TimeValue(0);
    for (const auto& dj : s_.constraints) {
      for (const auto& c : dj) {
        if (c.is_bounded()) {
          consider(c.interval.lo - s_.time);
          consider(c.interval.hi - s_.time);
        } else if (c.is_distance()) {
          consider(c.interval.lo);
          consider(c.interval.hi);
        }
      }
    }
    for (const auto& l : d_.links) {
      if (s_.scheduled(l.source)) continue;
      for (const auto& iv : l.intervals) {
        consider(iv.lo);
        consider(iv.hi);
      }
    }
    for (const auto& [u, windows] : s_.activations) {
      for (const auto& w : windows) {
        consider(w.lo - s_.time);
        consider(w.hi - s_.time);
      }
    }
  }

  std::size_t add_node(std::size_t feature) {
    std::vector<double> row(node_feature::width, 0.0);
    row[feature] = 1.0;
    g_.node_features.push_back(std::move(row));
    return g_.node_features.size() - 1;
  }

  void set_bound(std::vector<double>& row, const TimeValue& v, std::size_t class_col, std::size_t neg_col) {
    if (!v.is_finite()) {
      row[class_col + kDistanceClasses - 1] = 1.0;
      row[edge_feature::unbounded] = 1.0;
      if (v.is_neg_inf()) row[neg_col] = 1.0;
      return;
    }
    const int k = g_.degenerate ? 0 : distance_class(v.abs() / g_.d_max);
    row[class_col + static_cast<std::size_t>(k)] = 1.0;
    if (v.is_negative()) row[neg_col] = 1.0;
  }

  void add_edge(std::size_t src, std::size_t dst, std::size_t type, const Interval& iv) {
    std::vector<double> row(edge_feature::width, 0.0);
    row[type] = 1.0;
    set_bound(row, iv.lo, edge_feature::lower_class, edge_feature::lower_negative);
    set_bound(row, iv.hi, edge_feature::upper_class, edge_feature::upper_negative);
    g_.edges.emplace_back(src, dst);
    g_.edge_features.push_back(std::move(row));
  }

  const Dtnu& d_;
  const NodeState& s_;
  GraphEncoding g_;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finaliser over the running value
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

std::uint64_t row_hash(const std::vector<double>& row) {
  std::uint64_t h = 0x12345;
  for (double x : row) h = mix(h, static_cast<std::uint64_t>(std::llround(x * 1e6)));
  return h;
}

}  // namespace

GraphEncoding encode(const Dtnu& d, const NodeState& state) { return Builder(d, state).build(); }

std::uint64_t canonical_hash(const GraphEncoding& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = mix(row_hash(g.node_features[i]), g.decisions.contains(i) ? 1 : 0);
  }
  std::vector<std::uint64_t> edge_label(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) edge_label[e] = row_hash(g.edge_features[e]);

  for (int round = 0; round < 4; ++round) {
    std::vector<std::vector<std::uint64_t>> out(n), in(n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto [s, t] = g.edges[e];
      out[s].push_back(mix(edge_label[e], label[t]));
      in[t].push_back(mix(edge_label[e], label[s]));
    }
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(out[i].begin(), out[i].end());
      std::sort(in[i].begin(), in[i].end());
      std::uint64_t h = mix(label[i], 0xA);
      for (auto v : out[i]) h = mix(h, v);
      h = mix(h, 0xB);
      for (auto v : in[i]) h = mix(h, v);
      next[i] = h;
    }
    label = std::move(next);
  }
  std::sort(label.begin(), label.end());
  std::uint64_t h = mix(0, n);
  for (auto v : label) h = mix(h, v);
  return mix(h, g.edges.size());
}

std::vector<Decision> order_by_probability(const GraphEncoding& g, const HeuristicRanking& ranking) {
  std::vector<std::size_t> nodes = g.active;
  std::stable_sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) {
    auto pa = ranking.probabilities.find(a);
    auto pb = ranking.probabilities.find(b);
    const double va = pa == ranking.probabilities.end() ? 0.0 : pa->second;
    const double vb = pb == ranking.probabilities.end() ? 0.0 : pb->second;
    return va > vb;
  });
  std::vector<Decision> out;
  out.reserve(nodes.size());
  for (auto i : nodes) out.push_back(g.decisions.at(i));
  return out;
}

RankedDecisions rank_children(const GraphEncoding& g, HeuristicClient& client) {
  if (auto ranking = client.query(g)) return {order_by_probability(g, *ranking), false};
  RankedDecisions fallback;
  fallback.degraded = true;
  for (auto i : g.active) fallback.order.push_back(g.decisions.at(i));
  return fallback;
}

}  // namespace tdc
