#include "tdc/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tdc {

bool operator==(const Conjunct& a, const Conjunct& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Conjunct::Kind::literal_true:
    case Conjunct::Kind::literal_false:
      return true;
    case Conjunct::Kind::bounded:
      return a.first == b.first && a.interval == b.interval;
    case Conjunct::Kind::distance:
      return a.first == b.first && a.second == b.second && a.interval == b.interval;
  }
  return false;
}

TimepointId Dtnu::add_controllable(std::string name) {
  const auto id = static_cast<TimepointId>(timepoints.size());
  timepoints.push_back({std::move(name), TimepointKind::controllable});
  controllables.push_back(id);
  return id;
}

TimepointId Dtnu::add_uncontrollable(std::string name) {
  const auto id = static_cast<TimepointId>(timepoints.size());
  timepoints.push_back({std::move(name), TimepointKind::uncontrollable});
  uncontrollables.push_back(id);
  return id;
}

std::optional<TimepointId> Dtnu::find(std::string_view name) const {
  for (TimepointId i = 0; i < timepoints.size(); ++i) {
    if (timepoints[i].name == name) return i;
  }
  return std::nullopt;
}

const ContingencyLink* Dtnu::link_to(TimepointId uncontrollable) const {
  for (const auto& l : links) {
    if (l.target == uncontrollable) return &l;
  }
  return nullptr;
}

const Activation* Dtnu::activation_of(TimepointId uncontrollable) const {
  for (const auto& a : activated) {
    if (a.target == uncontrollable) return &a;
  }
  return nullptr;
}

namespace {

void check_interval(const Interval& iv, const std::string& where) {
  if (!iv.lo.is_finite()) throw ValidationError(where + ": lower bound must be finite");
  if (iv.hi.is_neg_inf()) throw ValidationError(where + ": upper bound cannot be -inf");
  if (iv.hi < iv.lo) {
    throw ValidationError(where + ": inverted interval [" + iv.lo.to_string() + ", " +
                          iv.hi.to_string() + "]");
  }
}

void check_windows(const std::vector<Interval>& ivs, const std::string& where) {
  if (ivs.empty()) throw ValidationError(where + ": no intervals");
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    check_interval(ivs[i], where);
    if (ivs[i].lo.is_negative()) throw ValidationError(where + ": negative lower bound");
    if (i > 0 && !(ivs[i - 1].hi < ivs[i].lo)) {
      throw ValidationError(where + ": intervals must be sorted and pairwise disjoint");
    }
  }
}

}  // namespace

void Dtnu::validate() const {
  std::set<std::string_view> names;
  for (const auto& tp : timepoints) {
    if (tp.name.empty()) throw ValidationError("empty timepoint name");
    if (!names.insert(tp.name).second) throw ValidationError("duplicate timepoint '" + tp.name + "'");
  }
  for (TimepointId id : controllables) {
    if (id >= size() || !is_controllable(id)) throw ValidationError("bad controllable id");
  }
  for (TimepointId id : uncontrollables) {
    if (id >= size() || is_controllable(id)) throw ValidationError("bad uncontrollable id");
  }
  if (controllables.size() + uncontrollables.size() != size()) {
    throw ValidationError("timepoint lists do not cover all timepoints");
  }

  auto check_ref = [&](TimepointId id, const char* where) {
    if (id >= size()) throw ValidationError(std::string(where) + ": unknown timepoint");
  };
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& dj = constraints[k];
    const std::string where = "constraint " + std::to_string(k);
    if (dj.empty()) throw ValidationError(where + ": empty disjunct");
    for (const auto& c : dj) {
      switch (c.kind) {
        case Conjunct::Kind::bounded:
          check_ref(c.first, where.c_str());
          check_interval(c.interval, where);
          break;
        case Conjunct::Kind::distance:
          check_ref(c.first, where.c_str());
          check_ref(c.second, where.c_str());
          if (c.first == c.second) throw ValidationError(where + ": distance between a timepoint and itself");
          check_interval(c.interval, where);
          break;
        default:
          break;
      }
    }
  }

  std::vector<int> covered(size(), 0);
  for (const auto& l : links) {
    check_ref(l.source, "contingency");
    check_ref(l.target, "contingency");
    if (!is_controllable(l.source)) {
      throw ValidationError("contingency source '" + name(l.source) + "' is not controllable");
    }
    if (is_controllable(l.target)) {
      throw ValidationError("contingency target '" + name(l.target) + "' is not uncontrollable");
    }
    check_windows(l.intervals, "contingency " + name(l.source) + "->" + name(l.target));
    ++covered[l.target];
  }
  for (const auto& a : activated) {
    check_ref(a.target, "activated");
    if (is_controllable(a.target)) {
      throw ValidationError("activated timepoint '" + name(a.target) + "' is not uncontrollable");
    }
    check_windows(a.windows, "activation of " + name(a.target));
    ++covered[a.target];
  }
  for (TimepointId u : uncontrollables) {
    if (covered[u] == 0) {
      throw ValidationError("uncontrollable '" + name(u) + "' has no contingency link");
    }
    if (covered[u] > 1) {
      throw ValidationError("uncontrollable '" + name(u) + "' is linked more than once");
    }
  }
}

std::string describe(const Conjunct& c, const Dtnu& d) {
  std::ostringstream os;
  auto iv = [&](const Interval& i) { os << "[" << i.lo << ", " << i.hi << "]"; };
  switch (c.kind) {
    case Conjunct::Kind::literal_true: return "true";
    case Conjunct::Kind::literal_false: return "false";
    case Conjunct::Kind::bounded:
      os << d.name(c.first) << " in ";
      iv(c.interval);
      break;
    case Conjunct::Kind::distance:
      os << d.name(c.first) << " - " << d.name(c.second) << " in ";
      iv(c.interval);
      break;
  }
  return os.str();
}

}  // namespace tdc
