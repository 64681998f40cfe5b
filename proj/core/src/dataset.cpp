#include "tdc/dataset.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

namespace tdc {

using Json = nlohmann::json;

namespace {

Json time_json(const TimeValue& v) {
  if (v.is_integer()) return v.rational().numerator();
  return v.to_string();
}

TimeValue time_from(const Json& j) {
  if (j.is_number_integer()) return TimeValue(j.get<std::int64_t>());
  return TimeValue::parse(j.get<std::string>());
}

Json params_json(const GenParams& p) {
  return Json{{"controllables", {p.min_controllables, p.max_controllables}},
              {"uncontrollables", {p.min_uncontrollables, p.max_uncontrollables}},
              {"bounds", {time_json(p.bounds.lo), time_json(p.bounds.hi)}},
              {"max_conjuncts", p.max_conjuncts},
              {"extra_disjunct_prob", p.extra_disjunct_prob},
              {"seed", p.seed}};
}

GenParams params_from(const Json& j) {
  GenParams p;
  p.min_controllables = j.at("controllables").at(0).get<int>();
  p.max_controllables = j.at("controllables").at(1).get<int>();
  p.min_uncontrollables = j.at("uncontrollables").at(0).get<int>();
  p.max_uncontrollables = j.at("uncontrollables").at(1).get<int>();
  p.bounds = {time_from(j.at("bounds").at(0)), time_from(j.at("bounds").at(1))};
  p.max_conjuncts = j.at("max_conjuncts").get<int>();
  p.extra_disjunct_prob = j.at("extra_disjunct_prob").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

void check_matrix(const std::vector<std::vector<double>>& rows, std::size_t width, const char* what) {
  for (const auto& r : rows) {
    if (r.size() != width) throw std::invalid_argument(std::string(what) + " row has the wrong width");
  }
}

}  // namespace

std::string serialize_record(const DatasetRecord& r) {
  const GraphEncoding& g = r.example.encoding;
  Json edges = Json::array();
  for (auto [s, t] : g.edges) edges.push_back({s, t});
  Json decisions = Json::object();
  for (const auto& [node, dec] : g.decisions) {
    decisions[std::to_string(node)] = dec.is_wait() ? Json{{"kind", "wait"}}
                                                    : Json{{"kind", "execute"}, {"timepoint", dec.timepoint}};
  }
  Json labels = Json::object();
  for (const auto& [node, y] : r.example.labels) labels[std::to_string(node)] = y;
  return Json{{"seed", r.seed},
              {"params", params_json(r.params)},
              {"nodes", g.node_features},
              {"edges", std::move(edges)},
              {"edge_features", g.edge_features},
              {"active", g.active},
              {"decisions", std::move(decisions)},
              {"d_max", time_json(g.d_max)},
              {"labels", std::move(labels)}}
      .dump();
}

DatasetRecord parse_record(std::string_view line, std::size_t index) {
  const std::string where = "record " + std::to_string(index);
  try {
    const Json j = Json::parse(line.begin(), line.end());
    DatasetRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.params = params_from(j.at("params"));
    GraphEncoding& g = r.example.encoding;
    g.node_features = j.at("nodes").get<std::vector<std::vector<double>>>();
    g.edge_features = j.at("edge_features").get<std::vector<std::vector<double>>>();
    check_matrix(g.node_features, node_feature::width, "node feature");
    check_matrix(g.edge_features, edge_feature::width, "edge feature");
    for (const auto& e : j.at("edges")) {
      const auto s = e.at(0).get<std::size_t>();
      const auto t = e.at(1).get<std::size_t>();
      if (s >= g.node_count() || t >= g.node_count()) throw std::invalid_argument("edge endpoint out of range");
      g.edges.emplace_back(s, t);
    }
    if (g.edges.size() != g.edge_features.size()) throw std::invalid_argument("edge/feature count mismatch");
    g.active = j.at("active").get<std::vector<std::size_t>>();
    for (const auto& [key, dec] : j.at("decisions").items()) {
      const std::size_t node = std::stoul(key);
      g.decisions[node] = dec.at("kind").get<std::string>() == "wait"
                              ? Decision::wait()
                              : Decision::execute(dec.at("timepoint").get<TimepointId>());
    }
    g.d_max = time_from(j.at("d_max"));
    g.degenerate = g.d_max.is_zero();
    for (const auto& [key, y] : j.at("labels").items()) {
      const int v = y.get<int>();
      if (v != 0 && v != 1) throw std::invalid_argument("labels must be 0 or 1");
      r.example.labels[std::stoul(key)] = v;
    }
    for (std::size_t a : g.active) {
      if (a >= g.node_count()) throw std::invalid_argument("active node out of range");
      if (!r.example.labels.contains(a)) throw std::invalid_argument("active node without a label");
    }
    if (r.example.labels.size() != g.active.size()) throw std::invalid_argument("label on an inactive node");
    return r;
  } catch (const DatasetError&) {
    throw;
  } catch (const std::exception& e) {
    throw DatasetError(where + ": " + e.what(), index);
  }
}

void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records) {
  out << kDatasetFormat << '\n';
  for (const auto& r : records) out << serialize_record(r) << '\n';
  if (!out) throw std::runtime_error("failed to write dataset");
}

std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kDatasetFormat) {
    throw DatasetError("missing '" + std::string(kDatasetFormat) + "' header", 0);
  }
  std::vector<DatasetRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_record(line, out.size()));
  }
  return out;
}

std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  return read_dataset(in);
}

DatasetSplit split_dataset(std::vector<DatasetRecord> records) {
  DatasetSplit s;
  for (std::size_t i = 0; i < records.size(); ++i) {
    (i % 6 == 5 ? s.validation : s.train).push_back(std::move(records[i]));
  }
  return s;
}

std::vector<DatasetRecord> build_dataset(const BuildOptions& opts) {
  opts.params.validate();
  std::vector<DatasetRecord> out(opts.count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= opts.count) return;
      try {
        const std::uint64_t seed = derive_seed(opts.params.seed, i);
        const Dtnu d = generate_dtnu(opts.params, seed);
        std::mt19937_64 rng(seed);
        out[i] = DatasetRecord{seed, opts.params, label_instance(d, opts.labels, rng)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = opts.count;
      }
    }
  };

  const unsigned n = std::max(1u, opts.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tdc
