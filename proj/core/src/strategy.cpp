#include "tdc/strategy.hpp"

#include "json_util.hpp"

#include <algorithm>

namespace tdc {

using detail::Json;

namespace {

Json node_to_json(const Strategy& s, std::size_t i, const Dtnu& d) {
  const StrategyNode& n = s.at(i);
  Json j = Json::object();
  switch (n.kind) {
    case StrategyNode::Kind::execute:
      j["step"] = "execute";
      j["timepoint"] = d.name(n.timepoint);
      j["at"] = detail::time_to_json(n.at);
      j["then"] = node_to_json(s, n.next, d);
      break;
    case StrategyNode::Kind::wait: {
      j["step"] = "wait";
      j["at"] = detail::time_to_json(n.at);
      j["duration"] = detail::time_to_json(n.duration);
      j["reactive"] = Json::array();
      for (const auto& p : n.reactive) {
        j["reactive"].push_back(Json{{"trigger", d.name(p.trigger)}, {"reaction", d.name(p.reaction)}});
      }
      j["branches"] = Json::array();
      for (const auto& b : n.branches) {
        Json jb = Json::object();
        jb["occurred"] = Json::array();
        for (auto u : b.occurred) jb["occurred"].push_back(d.name(u));
        jb["then"] = node_to_json(s, b.next, d);
        j["branches"].push_back(std::move(jb));
      }
      break;
    }
    case StrategyNode::Kind::done:
      j["step"] = "done";
      j["at"] = detail::time_to_json(n.at);
      j["executions"] = Json::array();
      for (const auto& [a, t] : n.executions) {
        j["executions"].push_back(Json{{"timepoint", d.name(a)}, {"at", detail::time_to_json(t)}});
      }
      break;
  }
  return j;
}

class Reader {
 public:
  explicit Reader(const Dtnu& d) : d_(d) {}

  std::size_t read(const Json& j, Strategy& s) {
    const std::string where = "strategy";
    const std::string step = detail::string_field(j, "step", where);
    StrategyNode n;
    if (step == "execute") {
      n.kind = StrategyNode::Kind::execute;
      n.timepoint = id(detail::string_field(j, "timepoint", where));
      n.at = detail::time_from_json(detail::field(j, "at", where), where);
      const std::size_t self = s.add(std::move(n));
      const std::size_t next = read(detail::field(j, "then", where), s);
      s.nodes[self].next = next;
      return self;
    }
    if (step == "wait") {
      n.kind = StrategyNode::Kind::wait;
      n.at = detail::time_from_json(detail::field(j, "at", where), where);
      n.duration = detail::time_from_json(detail::field(j, "duration", where), where);
      for (const auto& p : detail::field(j, "reactive", where)) {
        n.reactive.push_back({id(detail::string_field(p, "trigger", where)),
                              id(detail::string_field(p, "reaction", where))});
      }
      const std::size_t self = s.add(std::move(n));
      for (const auto& b : detail::field(j, "branches", where)) {
        StrategyNode::Branch br;
        for (const auto& u : detail::field(b, "occurred", where)) {
          if (!u.is_string()) throw SchemaError("strategy: occurred names must be strings");
          br.occurred.push_back(id(u.get<std::string>()));
        }
        std::sort(br.occurred.begin(), br.occurred.end());
        br.next = read(detail::field(b, "then", where), s);
        s.nodes[self].branches.push_back(std::move(br));
      }
      return self;
    }
    if (step == "done") {
      n.kind = StrategyNode::Kind::done;
      n.at = detail::time_from_json(detail::field(j, "at", where), where);
      for (const auto& e : detail::field(j, "executions", where)) {
        n.executions.emplace_back(id(detail::string_field(e, "timepoint", where)),
                                  detail::time_from_json(detail::field(e, "at", where), where));
      }
      return s.add(std::move(n));
    }
    throw SchemaError("strategy: unknown step '" + step + "'");
  }

 private:
  TimepointId id(const std::string& name) const {
    auto v = d_.find(name);
    if (!v) throw ValidationError("strategy: unknown timepoint '" + name + "'");
    return *v;
  }

  const Dtnu& d_;
};

}  // namespace

std::string serialize_strategy(const Strategy& s, const Dtnu& d) {
  Json doc = Json::object();
  doc["format"] = kStrategyFormat;
  doc["root"] = s.nodes.empty() ? Json(nullptr) : node_to_json(s, s.root, d);
  return doc.dump(2) + "\n";
}

Strategy parse_strategy(std::string_view text, const Dtnu& d) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed strategy JSON: ") + e.what());
  }
  if (detail::string_field(doc, "format", "strategy") != kStrategyFormat) {
    throw SchemaError("unsupported strategy format");
  }
  Strategy s;
  s.root = Reader(d).read(detail::field(doc, "root", "strategy"), s);
  return s;
}

}  // namespace tdc
