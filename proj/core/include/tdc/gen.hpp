#pragma once

#include "tdc/encode.hpp"
#include "tdc/model.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <random>

namespace tdc {

struct GenParams {
  int min_controllables = 10;
  int max_controllables = 20;
  int min_uncontrollables = 1;
  int max_uncontrollables = 3;
  Interval bounds{TimeValue(0), TimeValue(100)};
  int max_conjuncts = 5;
  double extra_disjunct_prob = 0.20;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an unusable combination.
  void validate() const;

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

/// splitmix64 step: seed of the `index`-th instance derived from `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Random instance; bounds carry two decimals. The same seed always yields
/// the same instance.
Dtnu generate_dtnu(const GenParams& p, std::uint64_t seed);

struct TrainingExample {
  GraphEncoding encoding;
  std::map<std::size_t, int> labels;  ///< active node -> 0/1
};

struct LabelParams {
  int nu = 25;
  std::chrono::milliseconds tau{3000};
};

/// Labels every d-OR child of the root by up to `nu` shuffled explorations
/// with timeout `tau`; the first conclusive one wins, all timeouts give 0.
TrainingExample label_instance(const Dtnu& d, const LabelParams& lp, std::mt19937_64& rng);

}  // namespace tdc
