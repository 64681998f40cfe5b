#include "tdc/instance_io.hpp"

#include "json_util.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tdc {

using detail::Json;

namespace {

std::vector<std::string> name_list(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return {};
  if (!it->is_array()) throw SchemaError(std::string("'") + key + "' must be a list of names");
  std::vector<std::string> out;
  for (const auto& n : *it) {
    if (!n.is_string()) throw SchemaError(std::string("'") + key + "' must contain only strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

std::vector<Interval> interval_list(const Json& obj, const std::string& where) {
  std::vector<Interval> out;
  if (auto it = obj.find("intervals"); it != obj.end()) {
    if (!it->is_array()) throw SchemaError(where + ": 'intervals' must be a list");
    for (const auto& iv : *it) out.push_back(detail::interval_from_json(iv, where));
  } else if (auto one = obj.find("interval"); one != obj.end()) {
    out.push_back(detail::interval_from_json(*one, where));
  } else {
    throw SchemaError(where + ": missing 'intervals'");
  }
  return out;
}

}  // namespace

Dtnu parse_dtnu(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance must be a JSON object");
  if (auto f = doc.find("format"); f != doc.end()) {
    if (!f->is_string() || f->get<std::string>() != kInstanceFormat) {
      throw SchemaError("unsupported format '" + f->dump() + "', expected " + std::string(kInstanceFormat));
    }
  }

  Dtnu d;
  std::map<std::string, TimepointId, std::less<>> ids;
  auto declare = [&](const std::string& name, bool controllable) {
    if (ids.contains(name)) throw ValidationError("duplicate timepoint '" + name + "'");
    ids[name] = controllable ? d.add_controllable(name) : d.add_uncontrollable(name);
  };
  for (const auto& n : name_list(doc, "controllables")) declare(n, true);
  for (const auto& n : name_list(doc, "uncontrollables")) declare(n, false);

  auto resolve = [&](const std::string& name, const std::string& where) {
    auto it = ids.find(name);
    if (it == ids.end()) throw ValidationError(where + ": unknown timepoint '" + name + "'");
    return it->second;
  };

  if (auto cs = doc.find("constraints"); cs != doc.end()) {
    if (!cs->is_array()) throw SchemaError("'constraints' must be a list of disjuncts");
    for (std::size_t k = 0; k < cs->size(); ++k) {
      const Json& dj = (*cs)[k];
      const std::string where = "constraint " + std::to_string(k);
      if (!dj.is_array()) throw SchemaError(where + ": a disjunct is a list of conjuncts");
      Disjunct disjunct;
      for (const auto& c : dj) {
        const std::string type = detail::string_field(c, "type", where);
        const Interval iv = detail::interval_from_json(detail::field(c, "interval", where), where);
        if (type == "bounded") {
          disjunct.push_back(Conjunct::bounded(resolve(detail::string_field(c, "timepoint", where), where), iv));
        } else if (type == "distance") {
          disjunct.push_back(Conjunct::distance(resolve(detail::string_field(c, "lhs", where), where),
                                                resolve(detail::string_field(c, "rhs", where), where), iv));
        } else {
          throw SchemaError(where + ": unknown conjunct type '" + type + "'");
        }
      }
      d.constraints.push_back(std::move(disjunct));
    }
  }

  if (auto ls = doc.find("contingencies"); ls != doc.end()) {
    if (!ls->is_array()) throw SchemaError("'contingencies' must be a list");
    for (const auto& l : *ls) {
      const std::string where = "contingency";
      ContingencyLink link;
      link.source = resolve(detail::string_field(l, "source", where), where);
      link.target = resolve(detail::string_field(l, "target", where), where);
      link.intervals = interval_list(l, where);
      d.links.push_back(std::move(link));
    }
  }

  if (auto as = doc.find("activated"); as != doc.end()) {
    if (!as->is_array()) throw SchemaError("'activated' must be a list");
    for (const auto& a : *as) {
      const std::string where = "activated";
      Activation act;
      act.target = resolve(detail::string_field(a, "target", where), where);
      act.windows = interval_list(a, where);
      d.activated.push_back(std::move(act));
    }
  }

  if (auto meta = doc.find("meta"); meta != doc.end() && meta->is_object()) {
    if (auto s = meta->find("seed"); s != meta->end()) {
      if (!s->is_number_unsigned()) throw SchemaError("meta.seed must be an unsigned integer");
      d.generator_seed = s->get<std::uint64_t>();
    }
  }

  d.validate();
  return d;
}

std::string serialize_dtnu(const Dtnu& d) {
  Json doc = Json::object();
  doc["format"] = kInstanceFormat;
  doc["controllables"] = Json::array();
  for (TimepointId a : d.controllables) doc["controllables"].push_back(d.name(a));
  doc["uncontrollables"] = Json::array();
  for (TimepointId u : d.uncontrollables) doc["uncontrollables"].push_back(d.name(u));

  doc["constraints"] = Json::array();
  for (const auto& dj : d.constraints) {
    Json jd = Json::array();
    for (const auto& c : dj) {
      Json jc = Json::object();
      if (c.is_bounded()) {
        jc["type"] = "bounded";
        jc["timepoint"] = d.name(c.first);
      } else if (c.is_distance()) {
        jc["type"] = "distance";
        jc["lhs"] = d.name(c.first);
        jc["rhs"] = d.name(c.second);
      } else {
        continue;  // literals never appear in instance files
      }
      jc["interval"] = detail::interval_to_json(c.interval);
      jd.push_back(std::move(jc));
    }
    doc["constraints"].push_back(std::move(jd));
  }

  doc["contingencies"] = Json::array();
  for (const auto& l : d.links) {
    Json jl = Json::object();
    jl["source"] = d.name(l.source);
    jl["target"] = d.name(l.target);
    jl["intervals"] = Json::array();
    for (const auto& iv : l.intervals) jl["intervals"].push_back(detail::interval_to_json(iv));
    doc["contingencies"].push_back(std::move(jl));
  }

  if (!d.activated.empty()) {
    doc["activated"] = Json::array();
    for (const auto& a : d.activated) {
      Json ja = Json::object();
      ja["target"] = d.name(a.target);
      ja["intervals"] = Json::array();
      for (const auto& iv : a.windows) ja["intervals"].push_back(detail::interval_to_json(iv));
      doc["activated"].push_back(std::move(ja));
    }
  }
  if (d.generator_seed) doc["meta"] = Json{{"seed", *d.generator_seed}};
  return doc.dump(2) + "\n";
}

Dtnu load_dtnu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dtnu(ss.str());
}

void save_dtnu(const std::filesystem::path& path, const Dtnu& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file '" + path.string() + "'");
  out << serialize_dtnu(d);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace tdc
