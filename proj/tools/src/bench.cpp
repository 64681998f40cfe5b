#include "bench.hpp"

#include <tdc/heuristic_client.hpp>
#include <tdc/instance_io.hpp>
#include <tdc/search.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace tdc::cli {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> instance_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

BenchRecord run_one(const fs::path& file, const BenchOptions& opts, HeuristicClient* heuristic) {
  BenchRecord r;
  r.instance = file.filename().string();
  r.config = opts.config;
  r.seed = opts.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Dtnu d = load_dtnu(file);
    if (d.generator_seed) r.seed = *d.generator_seed;
    SolveConfig cfg;
    cfg.timeout = opts.timeout;
    cfg.heuristic = heuristic;
    cfg.heuristic_depth = opts.heuristic_depth;
    const SolveResult res = solve(d, cfg);
    r.verdict = to_string(res.verdict);
    r.nodes = res.stats.dtnu_nodes;
  } catch (const std::exception& e) {
    r.verdict = "Error";
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& opts) {
  const std::vector<fs::path> files = instance_files(opts.dir);
  std::vector<BenchRecord> records(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    std::unique_ptr<SidecarClient> heuristic;
    if (!opts.heuristic_command.empty()) heuristic = std::make_unique<SidecarClient>(opts.heuristic_command);
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      records[i] = run_one(files[i], opts, heuristic.get());
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "instance,verdict,config,seed\n";
  for (const auto& r : records) {
    out << csv_field(r.instance) << ',' << r.verdict << ',' << csv_field(r.config) << ',' << r.seed << '\n';
  }
}

void write_timing_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "instance,seconds,nodes,error\n";
  for (const auto& r : records) {
    out << csv_field(r.instance) << ',' << std::fixed << std::setprecision(6) << r.seconds << ',' << r.nodes
        << ',' << csv_field(r.error) << '\n';
  }
}

std::vector<std::pair<int, std::size_t>> solved_curve(const std::vector<BenchRecord>& records,
                                                      std::chrono::milliseconds timeout) {
  const int horizon = std::max(1, static_cast<int>(std::ceil(static_cast<double>(timeout.count()) / 1000.0)));
  std::vector<std::pair<int, std::size_t>> curve;
  for (int x = 1; x <= horizon; ++x) {
    const auto solved = std::count_if(records.begin(), records.end(),
                                      [&](const BenchRecord& r) { return r.solved() && r.seconds <= x; });
    curve.emplace_back(x, static_cast<std::size_t>(solved));
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const std::vector<std::pair<int, std::size_t>>& curve) {
  out << "seconds,solved\n";
  for (const auto& [x, y] : curve) out << x << ',' << y << '\n';
}

}  // namespace tdc::cli
