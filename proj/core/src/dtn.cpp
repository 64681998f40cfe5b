#include "tdc/dtn.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdc {

namespace {

struct Edge {
  std::size_t from;
  std::size_t to;
  TimeValue weight;  // x_to - x_from <= weight
};

/// All-pairs shortest paths over difference constraints, node 0 pinned at
/// time zero.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, TimeValue::infinity()) {
    for (std::size_t i = 0; i < n; ++i) at(i, i) = TimeValue(0);
  }

  const TimeValue& at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  TimeValue& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

  bool entails(const Edge& e) const { return at(e.from, e.to) <= e.weight; }

  /// False when the edge closes a negative cycle; the matrix is then stale.
  bool add(const Edge& e) {
    if ((at(e.to, e.from) + e.weight).is_negative()) return false;
    if (entails(e)) return true;
    for (std::size_t i = 0; i < n_; ++i) {
      const TimeValue& to_u = at(i, e.from);
      if (to_u.is_pos_inf()) continue;
      const TimeValue via = to_u + e.weight;
      for (std::size_t j = 0; j < n_; ++j) {
        const TimeValue& from_v = at(e.to, j);
        if (from_v.is_pos_inf()) continue;
        TimeValue cand = via + from_v;
        if (cand < at(i, j)) at(i, j) = std::move(cand);
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  std::vector<TimeValue> d_;
};

using EdgeSet = std::vector<Edge>;

class Solver {
 public:
  explicit Solver(const Dtn& p) : problem_(p) {
    index_.assign(max_id(p) + 1, 0);
    for (std::size_t k = 0; k < p.variables.size(); ++k) index_[p.variables[k]] = k + 1;
  }

  std::optional<DtnAssignment> run() {
    DistanceMatrix m(problem_.variables.size() + 1);
    for (std::size_t k = 0; k < problem_.variables.size(); ++k) {
      if (!m.add({k + 1, 0, -problem_.floor})) return std::nullopt;
    }

    for (const auto& dj : problem_.disjuncts) {
      if (std::any_of(dj.begin(), dj.end(), [](const Conjunct& c) { return c.is_true(); })) continue;
      std::vector<EdgeSet> options;
      for (const auto& c : dj) {
        if (!c.is_false()) options.push_back(edges_of(c));
      }
      if (options.empty()) return std::nullopt;
      choices_.push_back(std::move(options));
    }
    std::stable_sort(choices_.begin(), choices_.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });

    if (!search(0, m)) return std::nullopt;
    DtnAssignment out;
    for (std::size_t k = 0; k < problem_.variables.size(); ++k) {
      out[problem_.variables[k]] = -solution_->at(k + 1, 0);
    }
    return out;
  }

 private:
  static std::size_t max_id(const Dtn& p) {
    std::size_t mx = 0;
    for (auto v : p.variables) mx = std::max<std::size_t>(mx, v);
    return mx;
  }

  std::size_t node(TimepointId v) const {
    if (v >= index_.size() || index_[v] == 0) {
      throw std::invalid_argument("DTN conjunct mentions a timepoint that is not a variable");
    }
    return index_[v];
  }

  EdgeSet edges_of(const Conjunct& c) const {
    EdgeSet es;
    const auto& iv = c.interval;
    const std::size_t a = node(c.first);
    const std::size_t b = c.is_bounded() ? 0 : node(c.second);
    // a - b in [lo, hi]
    if (iv.hi.is_finite()) es.push_back({b, a, iv.hi});
    if (iv.lo.is_finite()) es.push_back({a, b, -iv.lo});
    if (iv.hi < iv.lo) es.push_back({0, 0, TimeValue(-1)});  // empty interval never holds
    return es;
  }

  static bool apply(DistanceMatrix& m, const EdgeSet& es) {
    for (const auto& e : es) {
      if (!m.add(e)) return false;
    }
    return true;
  }

  static bool entailed(const DistanceMatrix& m, const EdgeSet& es) {
    return std::all_of(es.begin(), es.end(), [&](const Edge& e) { return m.entails(e); });
  }

  bool search(std::size_t level, const DistanceMatrix& m) {
    if (level == choices_.size()) {
      solution_ = m;
      return true;
    }
    const auto& options = choices_[level];
    for (const auto& es : options) {
      if (entailed(m, es)) return search(level + 1, m);
    }
    for (const auto& es : options) {
      DistanceMatrix next = m;
      if (apply(next, es) && search(level + 1, next)) return true;
    }
    return false;
  }

  const Dtn& problem_;
  std::vector<std::size_t> index_;
  std::vector<std::vector<EdgeSet>> choices_;
  std::optional<DistanceMatrix> solution_;
};

}  // namespace

std::optional<DtnAssignment> solve_dtn(const Dtn& problem) {
  return Solver(problem).run();
}

}  // namespace tdc
