#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tdc::cli {

struct BenchOptions {
  std::filesystem::path dir;
  std::chrono::milliseconds timeout{30000};
  std::string config = "ts";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string heuristic_command;  ///< empty: unguided
  int heuristic_depth = 15;
};

struct BenchRecord {
  std::string instance;  ///< file name
  std::string verdict;   ///< TDC, NotTDC, Timeout or Error
  std::string config;
  std::uint64_t seed = 0;  ///< generator seed from the file, else the bench seed
  double seconds = 0.0;
  std::uint64_t nodes = 0;
  std::string error;

  bool solved() const { return verdict == "TDC" || verdict == "NotTDC"; }
};

/// Solves every *.json file in `opts.dir` on a pool of `opts.jobs` workers.
/// Records are returned sorted by file name.
std::vector<BenchRecord> run_bench(const BenchOptions& opts);

/// Columns: instance,verdict,config,seed. Contains nothing timing dependent.
void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// Columns: instance,seconds,nodes,error.
void write_timing_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// (x, instances solved within x seconds) for x = 1 .. ceil(timeout).
std::vector<std::pair<int, std::size_t>> solved_curve(const std::vector<BenchRecord>& records,
                                                      std::chrono::milliseconds timeout);

/// Columns: seconds,solved.
void write_curve_csv(std::ostream& out, const std::vector<std::pair<int, std::size_t>>& curve);

}  // namespace tdc::cli
