#pragma once

#include "tdc/time_value.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdc {

using TimepointId = std::uint32_t;

enum class TimepointKind : std::uint8_t { controllable, uncontrollable };

struct Timepoint {
  std::string name;
  TimepointKind kind = TimepointKind::controllable;

  friend bool operator==(const Timepoint&, const Timepoint&) = default;
};

/// Closed interval [lo, hi]. Input intervals have a finite lo; rewritten
/// constraints may carry -inf as lo (e.g. v <= t - 1 after substitution).
struct Interval {
  TimeValue lo;
  TimeValue hi;

  bool contains(const TimeValue& v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool empty() const { return hi < lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Atomic relation. Distance means first - second in interval; Bounded
/// means first in interval (second unused).
struct Conjunct {
  enum class Kind : std::uint8_t { bounded, distance, literal_true, literal_false };

  Kind kind = Kind::literal_true;
  TimepointId first = 0;
  TimepointId second = 0;
  Interval interval;

  static Conjunct bounded(TimepointId v, Interval iv) { return {Kind::bounded, v, 0, iv}; }
  static Conjunct distance(TimepointId vi, TimepointId vj, Interval iv) {
    return {Kind::distance, vi, vj, iv};
  }
  static Conjunct truth() { return {Kind::literal_true, 0, 0, {}}; }
  static Conjunct falsity() { return {Kind::literal_false, 0, 0, {}}; }

  bool is_bounded() const { return kind == Kind::bounded; }
  bool is_distance() const { return kind == Kind::distance; }
  bool is_true() const { return kind == Kind::literal_true; }
  bool is_false() const { return kind == Kind::literal_false; }
  bool is_literal() const { return is_true() || is_false(); }
  bool mentions(TimepointId v) const {
    return (is_bounded() && first == v) || (is_distance() && (first == v || second == v));
  }

  friend bool operator==(const Conjunct& a, const Conjunct& b);
};

/// Satisfied iff at least one conjunct is satisfied.
using Disjunct = std::vector<Conjunct>;

struct ContingencyLink {
  TimepointId source = 0;
  TimepointId target = 0;
  std::vector<Interval> intervals;

  friend bool operator==(const ContingencyLink&, const ContingencyLink&) = default;
};

/// An uncontrollable whose source has already executed before time 0; its
/// absolute occurrence windows are given directly.
struct Activation {
  TimepointId target = 0;
  std::vector<Interval> windows;

  friend bool operator==(const Activation&, const Activation&) = default;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Disjunctive temporal network with uncertainty {A, U, C, L}.
struct Dtnu {
  std::vector<Timepoint> timepoints;
  std::vector<TimepointId> controllables;
  std::vector<TimepointId> uncontrollables;
  std::vector<Disjunct> constraints;  ///< implicit conjunction
  std::vector<ContingencyLink> links;
  std::vector<Activation> activated;
  std::optional<std::uint64_t> generator_seed;

  TimepointId add_controllable(std::string name);
  TimepointId add_uncontrollable(std::string name);

  std::size_t size() const { return timepoints.size(); }
  const std::string& name(TimepointId id) const { return timepoints.at(id).name; }
  bool is_controllable(TimepointId id) const {
    return timepoints.at(id).kind == TimepointKind::controllable;
  }
  std::optional<TimepointId> find(std::string_view name) const;

  const ContingencyLink* link_to(TimepointId uncontrollable) const;
  const Activation* activation_of(TimepointId uncontrollable) const;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  friend bool operator==(const Dtnu&, const Dtnu&) = default;
};

std::string describe(const Conjunct& c, const Dtnu& d);

}  // namespace tdc
