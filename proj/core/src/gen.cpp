#include "tdc/gen.hpp"

#include "tdc/search.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tdc {

void GenParams::validate() const {
  if (min_controllables < 1 || max_controllables < min_controllables) {
    throw std::invalid_argument("controllable range must satisfy 1 <= min <= max");
  }
  if (min_uncontrollables < 0 || max_uncontrollables < min_uncontrollables) {
    throw std::invalid_argument("uncontrollable range must satisfy 0 <= min <= max");
  }
  if (max_uncontrollables > min_controllables) {
    throw std::invalid_argument("each uncontrollable needs its own controllable source");
  }
  if (!bounds.lo.is_finite() || !bounds.hi.is_finite() || bounds.empty() || bounds.lo.is_negative()) {
    throw std::invalid_argument("bound range must be finite, non-negative and non-empty");
  }
  if (max_conjuncts < 1) throw std::invalid_argument("max_conjuncts must be at least 1");
  if (!(extra_disjunct_prob >= 0.0 && extra_disjunct_prob <= 1.0)) {
    throw std::invalid_argument("extra_disjunct_prob must lie in [0, 1]");
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

class Generator {
 public:
  Generator(const GenParams& p, std::uint64_t seed) : p_(p), rng_(seed) {}

  Dtnu run(std::uint64_t seed) {
    const int n1 = uniform(p_.min_controllables, p_.max_controllables);
    const int n2 = uniform(p_.min_uncontrollables, p_.max_uncontrollables);
    for (int i = 1; i <= n1; ++i) d_.add_controllable("a" + std::to_string(i));
    for (int j = 1; j <= n2; ++j) d_.add_uncontrollable("u" + std::to_string(j));
    d_.generator_seed = seed;

    std::vector<TimepointId> sources = d_.controllables;
    std::shuffle(sources.begin(), sources.end(), rng_);
    for (int j = 0; j < n2; ++j) {
      const TimepointId u = d_.uncontrollables[static_cast<std::size_t>(j)];
      d_.links.push_back({sources[static_cast<std::size_t>(j)], u, {interval()}});
      seen_.insert(u);
      seen_.insert(sources[static_cast<std::size_t>(j)]);
    }

    std::bernoulli_distribution extra(p_.extra_disjunct_prob);
    for (TimepointId v = 0; v < d_.size(); ++v) {
      if (!seen_.contains(v) || extra(rng_)) add_disjunct(v);
    }
    return std::move(d_);
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  TimeValue value() {
    const std::int64_t steps = ((p_.bounds.hi - p_.bounds.lo) * TimeValue(100)).floor();
    return p_.bounds.lo + TimeValue(std::uniform_int_distribution<std::int64_t>(0, steps)(rng_), 100);
  }

  Interval interval() {
    TimeValue x = value();
    TimeValue y = value();
    if (y < x) std::swap(x, y);
    return {x, y};
  }

  TimepointId other_than(TimepointId v) {
    auto w = static_cast<TimepointId>(uniform(0, static_cast<int>(d_.size()) - 2));
    return w >= v ? w + 1 : w;
  }

  Conjunct conjunct_on(TimepointId v) {
    if (d_.size() > 1 && std::bernoulli_distribution(0.5)(rng_)) {
      const TimepointId w = other_than(v);
      seen_.insert(w);
      return Conjunct::distance(v, w, interval());
    }
    return Conjunct::bounded(v, interval());
  }

  void add_disjunct(TimepointId v) {
    Disjunct dj{conjunct_on(v)};
    seen_.insert(v);
    const int size = uniform(1, p_.max_conjuncts);
    for (int k = 1; k < size; ++k) {
      const auto w = static_cast<TimepointId>(uniform(0, static_cast<int>(d_.size()) - 1));
      seen_.insert(w);
      dj.push_back(conjunct_on(w));
    }
    d_.constraints.push_back(std::move(dj));
  }

  const GenParams& p_;
  std::mt19937_64 rng_;
  Dtnu d_;
  std::set<TimepointId> seen_;
};

}  // namespace

Dtnu generate_dtnu(const GenParams& p, std::uint64_t seed) {
  p.validate();
  Dtnu d = Generator(p, seed).run(seed);
  d.validate();
  return d;
}

TrainingExample label_instance(const Dtnu& d, const LabelParams& lp, std::mt19937_64& rng) {
  if (lp.nu < 1) throw std::invalid_argument("nu must be at least 1");
  if (lp.tau.count() <= 0) throw std::invalid_argument("tau must be positive");

  const NodeState root = root_state(d);
  TrainingExample ex;
  ex.encoding = encode(d, root);
  const std::vector<Decision> available = expand_dor(d, root);

  SolveConfig cfg;
  cfg.timeout = lp.tau;
  cfg.reorder = [&rng](std::vector<Decision>& ds) { std::shuffle(ds.begin(), ds.end(), rng); };

  for (std::size_t node : ex.encoding.active) {
    const Decision& dec = ex.encoding.decisions.at(node);
    int label = 0;
    if (std::find(available.begin(), available.end(), dec) != available.end()) {
      for (int attempt = 0; attempt < lp.nu; ++attempt) {
        const Verdict v = solve_from(d, root, dec, cfg).verdict;
        if (v != Verdict::timeout) {
          label = v == Verdict::tdc ? 1 : 0;
          break;
        }
      }
    }
    ex.labels[node] = label;
  }
  return ex;
}

}  // namespace tdc
