#include "commands.hpp"

#include "bench.hpp"

#include <tdc/dataset.hpp>
#include <tdc/gen.hpp>
#include <tdc/heuristic_client.hpp>
#include <tdc/instance_io.hpp>
#include <tdc/search.hpp>
#include <tdc/simulate.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <thread>

namespace tdc::cli {

namespace fs = std::filesystem;

std::uint64_t default_seed() {
  const char* env = std::getenv("TDC_SEED");
  if (!env) return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    return used == std::string(env).size() ? v : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::chrono::milliseconds seconds_to_ms(double s) {
  if (!(s > 0)) throw UsageError("durations must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(s * 1000.0 + 0.5));
}

void require_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw UsageError("output directory does not exist: " + dir.string());
}

void require_parent(const fs::path& file) {
  const fs::path parent = file.has_parent_path() ? file.parent_path() : fs::path(".");
  require_directory(parent);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

fs::path sibling(const fs::path& csv, const std::string& suffix) {
  fs::path p = csv;
  p.replace_filename(csv.stem().string() + suffix);
  return p;
}

struct GenFlags {
  std::vector<int> controllables{10, 20};
  std::vector<int> uncontrollables{1, 3};
  double bound_max = 100;
  int max_conjuncts = 5;
  double extra_prob = 0.20;

  void attach(CLI::App& app) {
    app.add_option("--controllables", controllables, "Controllable count range (min max)")
        ->expected(2)
        ->capture_default_str();
    app.add_option("--uncontrollables", uncontrollables, "Uncontrollable count range (min max)")
        ->expected(2)
        ->capture_default_str();
    app.add_option("--bound-max", bound_max, "Interval bounds are drawn in [0, bound-max]")->capture_default_str();
    app.add_option("--max-conjuncts", max_conjuncts, "Largest disjunct size")->capture_default_str();
    app.add_option("--extra-prob", extra_prob, "Probability of an extra disjunct per timepoint")
        ->capture_default_str();
  }

  GenParams params(std::uint64_t seed) const {
    GenParams p;
    p.min_controllables = controllables.at(0);
    p.max_controllables = controllables.at(1);
    p.min_uncontrollables = uncontrollables.at(0);
    p.max_uncontrollables = uncontrollables.at(1);
    p.bounds = {TimeValue(0), TimeValue(std::llround(bound_max * 100), 100)};
    p.max_conjuncts = max_conjuncts;
    p.extra_disjunct_prob = extra_prob;
    p.seed = seed;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

struct SolveFlags {
  std::string file;
  double timeout = 30;
  std::string heuristic;
  int heuristic_depth = 15;
  std::string strategy_out;
  bool no_symmetry = false;
};

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  const Dtnu d = load_dtnu(f.file);
  if (!f.strategy_out.empty()) require_parent(f.strategy_out);
  std::unique_ptr<SidecarClient> client;
  if (!f.heuristic.empty()) client = std::make_unique<SidecarClient>(f.heuristic);

  SolveConfig cfg;
  cfg.timeout = seconds_to_ms(f.timeout);
  cfg.heuristic = client.get();
  cfg.heuristic_depth = f.heuristic_depth;
  cfg.symmetry_pruning = !f.no_symmetry;
  const SolveResult r = solve(d, cfg);

  out << "verdict: " << to_string(r.verdict) << '\n'
      << "seconds: " << std::fixed << std::setprecision(3) << r.stats.seconds << '\n'
      << "nodes: " << r.stats.dtnu_nodes << '\n';
  if (client) out << "heuristic: " << (r.stats.heuristic_degraded ? "degraded" : "ok") << '\n';
  if (r.strategy && !f.strategy_out.empty()) {
    write_file(f.strategy_out, serialize_strategy(*r.strategy, d));
    out << "strategy: " << f.strategy_out << '\n';
  }
  switch (r.verdict) {
    case Verdict::tdc:
      return kExitTdc;
    case Verdict::not_tdc:
      return kExitNotTdc;
    case Verdict::timeout:
      break;
  }
  return kExitTimeout;
}

struct GenerateFlags {
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::string out;
  GenFlags gen;
};

int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  require_directory(f.out);
  const GenParams p = f.gen.params(f.seed);
  for (std::size_t i = 0; i < f.count; ++i) {
    std::ostringstream name;
    name << "inst_" << std::setw(4) << std::setfill('0') << i << ".json";
    save_dtnu(fs::path(f.out) / name.str(), generate_dtnu(p, derive_seed(p.seed, i)));
  }
  out << "generated " << f.count << " instances in " << f.out << '\n';
  return 0;
}

struct LabelFlags {
  std::size_t count = 10;
  std::uint64_t seed = 0;
  int nu = 25;
  double tau = 3;
  unsigned threads = 1;
  std::string out;
  GenFlags gen;
};

int cmd_label(const LabelFlags& f, std::ostream& out) {
  require_parent(f.out);
  BuildOptions opts;
  opts.count = f.count;
  opts.params = f.gen.params(f.seed);
  opts.labels.nu = f.nu;
  opts.labels.tau = seconds_to_ms(f.tau);
  opts.threads = f.threads;
  const auto records = build_dataset(opts);
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + f.out);
  write_dataset(file, records);
  out << "labeled " << records.size() << " instances into " << f.out << '\n';
  return 0;
}

struct BenchFlags {
  std::string dir;
  double timeout = 30;
  std::string config = "ts";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
  std::string heuristic;
  int heuristic_depth = 15;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  require_parent(f.out);
  BenchOptions opts;
  opts.dir = f.dir;
  opts.timeout = seconds_to_ms(f.timeout);
  opts.config = f.config;
  opts.seed = f.seed;
  opts.jobs = f.jobs;
  opts.heuristic_command = f.heuristic;
  opts.heuristic_depth = f.heuristic_depth;
  const auto records = run_bench(opts);

  const fs::path csv(f.out);
  std::ostringstream rec, timing, curve;
  write_records_csv(rec, records);
  write_timing_csv(timing, records);
  const auto points = solved_curve(records, opts.timeout);
  write_curve_csv(curve, points);
  write_file(csv, rec.str());
  write_file(sibling(csv, ".curve.csv"), curve.str());
  write_file(sibling(csv, ".timing.csv"), timing.str());

  std::size_t tdc = 0, not_tdc = 0, timeouts = 0, errors = 0;
  for (const auto& r : records) {
    if (r.verdict == "TDC") ++tdc;
    else if (r.verdict == "NotTDC") ++not_tdc;
    else if (r.verdict == "Timeout") ++timeouts;
    else ++errors;
  }
  out << "instances: " << records.size() << "  TDC: " << tdc << "  NotTDC: " << not_tdc
      << "  Timeout: " << timeouts << "  Error: " << errors << '\n';
  return 0;
}

struct SimulateFlags {
  std::string instance;
  std::string strategy;
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  std::string mode = "uniform";
};

int cmd_simulate(const SimulateFlags& f, std::ostream& out) {
  const Dtnu d = load_dtnu(f.instance);
  std::ifstream in(f.strategy, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + f.strategy);
  std::stringstream text;
  text << in.rdbuf();
  const Strategy s = parse_strategy(text.str(), d);
  const SamplingMode mode = f.mode == "endpoint" ? SamplingMode::endpoint : SamplingMode::uniform;

  std::mt19937_64 rng(f.seed);
  std::size_t satisfied = 0;
  for (std::size_t i = 0; i < f.runs; ++i) {
    const SimulationTrace t = simulate_execution(d, s, rng, mode);
    if (t.satisfied) {
      ++satisfied;
    } else if (satisfied == i) {
      out << "first violation in run " << i << ": " << describe(d.constraints[*t.violated_disjunct][0], d)
          << (d.constraints[*t.violated_disjunct].size() > 1 ? " or ..." : "") << '\n';
    }
  }
  out << "runs: " << f.runs << "  satisfied: " << satisfied << '\n';
  return satisfied == f.runs ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-based dynamic controllability solver for DTNUs"};
  app.require_subcommand(1);
  const std::uint64_t seed = default_seed();

  SolveFlags solve_f;
  auto* solve_cmd = app.add_subcommand("solve", "Decide TDC of an instance; exit 0 TDC, 1 NotTDC, 2 Timeout, 3 error");
  solve_cmd->add_option("file", solve_f.file, "Instance file (tdc-dtnu/1)")->required();
  solve_cmd->add_option("--timeout", solve_f.timeout, "Wall-clock limit in seconds")->capture_default_str();
  solve_cmd->add_option("--heuristic", solve_f.heuristic, "Sidecar command speaking tdc-heur/1");
  solve_cmd->add_option("--heuristic-depth", solve_f.heuristic_depth, "Deepest d-OR that consults the heuristic")
      ->capture_default_str();
  solve_cmd->add_option("--strategy-out", solve_f.strategy_out, "Write the strategy here when TDC");
  solve_cmd->add_flag("--no-symmetry", solve_f.no_symmetry, "Disable symmetric-subtree pruning");

  GenerateFlags gen_f;
  gen_f.seed = seed;
  auto* gen_cmd = app.add_subcommand("generate", "Write random instances inst_NNNN.json into a directory");
  gen_cmd->add_option("--count", gen_f.count, "Number of instances")->capture_default_str();
  gen_cmd->add_option("--seed", gen_f.seed, "Base seed (default: TDC_SEED or 0)")->capture_default_str();
  gen_cmd->add_option("--out", gen_f.out, "Existing output directory")->required();
  gen_f.gen.attach(*gen_cmd);

  LabelFlags label_f;
  label_f.seed = seed;
  auto* label_cmd = app.add_subcommand("label", "Generate and label instances into a tdc-dataset/1 file");
  label_cmd->add_option("--count", label_f.count, "Number of examples")->capture_default_str();
  label_cmd->add_option("--seed", label_f.seed, "Base seed (default: TDC_SEED or 0)")->capture_default_str();
  label_cmd->add_option("--nu", label_f.nu, "Explorations per child")->capture_default_str();
  label_cmd->add_option("--tau", label_f.tau, "Seconds per exploration")->capture_default_str();
  label_cmd->add_option("--threads", label_f.threads, "Worker threads")->capture_default_str();
  label_cmd->add_option("--out", label_f.out, "Dataset file; its directory must exist")->required();
  label_f.gen.attach(*label_cmd);

  BenchFlags bench_f;
  bench_f.seed = seed;
  bench_f.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* bench_cmd = app.add_subcommand(
      "bench",
      "Solve every *.json in a directory. Writes OUT (instance,verdict,config,seed), "
      "OUT-stem.curve.csv (seconds,solved) and OUT-stem.timing.csv (instance,seconds,nodes,error)");
  bench_cmd->add_option("dir", bench_f.dir, "Instance directory")->required();
  bench_cmd->add_option("--timeout", bench_f.timeout, "Seconds per instance")->capture_default_str();
  bench_cmd->add_option("--config", bench_f.config, "Configuration id written to the CSV")->capture_default_str();
  bench_cmd->add_option("--seed", bench_f.seed, "Seed recorded for instances without one")->capture_default_str();
  bench_cmd->add_option("--jobs", bench_f.jobs, "Parallel workers")->capture_default_str();
  bench_cmd->add_option("--out", bench_f.out, "Records CSV; its directory must exist")->required();
  bench_cmd->add_option("--heuristic", bench_f.heuristic, "Sidecar command speaking tdc-heur/1");
  bench_cmd->add_option("--heuristic-depth", bench_f.heuristic_depth, "Deepest d-OR that consults the heuristic")
      ->capture_default_str();

  SimulateFlags sim_f;
  sim_f.seed = seed;
  auto* sim_cmd = app.add_subcommand("simulate", "Replay a strategy against random environments");
  sim_cmd->add_option("instance", sim_f.instance, "Instance file")->required();
  sim_cmd->add_option("strategy", sim_f.strategy, "Strategy file (tdc-strategy/1)")->required();
  sim_cmd->add_option("--runs", sim_f.runs, "Number of simulated executions")->capture_default_str();
  sim_cmd->add_option("--seed", sim_f.seed, "Seed (default: TDC_SEED or 0)")->capture_default_str();
  sim_cmd->add_option("--mode", sim_f.mode, "Occurrence sampling")
      ->check(CLI::IsMember({"uniform", "endpoint"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_f, out);
    if (*gen_cmd) return cmd_generate(gen_f, out);
    if (*label_cmd) return cmd_label(label_f, out);
    if (*bench_cmd) return cmd_bench(bench_f, out);
    if (*sim_cmd) return cmd_simulate(sim_f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace tdc::cli
