#pragma once

#include "tdc/gen.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdc {

inline constexpr std::string_view kDatasetFormat = "tdc-dataset/1";

class DatasetError : public std::runtime_error {
 public:
  DatasetError(const std::string& what, std::size_t record) : std::runtime_error(what), record_(record) {}
  /// Zero-based index of the offending record.
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

struct DatasetRecord {
  std::uint64_t seed = 0;  ///< generator seed of the instance
  GenParams params;
  TrainingExample example;
};

/// One JSON object per line, keys sorted.
std::string serialize_record(const DatasetRecord& r);
DatasetRecord parse_record(std::string_view line, std::size_t index);

void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> read_dataset(std::istream& in);
std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path);

struct DatasetSplit {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> validation;
};

/// Every sixth record goes to validation, the rest to training (5:1).
DatasetSplit split_dataset(std::vector<DatasetRecord> records);

struct BuildOptions {
  std::size_t count = 10;
  GenParams params;
  LabelParams labels;
  unsigned threads = 1;
};

/// Generates and labels `count` instances on a worker pool; records come
/// out in index order. Instance i uses derive_seed(params.seed, i).
std::vector<DatasetRecord> build_dataset(const BuildOptions& opts);

}  // namespace tdc
