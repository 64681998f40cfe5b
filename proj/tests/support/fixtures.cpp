#include "fixtures.hpp"

#include <atomic>
#include <unistd.h>

namespace tdc::testing {

std::filesystem::path data_path(const std::string& relative) { return std::filesystem::path(TDC_DATA_DIR) / relative; }

std::filesystem::path fake_sidecar_path() { return TDC_FAKE_SIDECAR; }

Dtnu gamma_prime() {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  const auto a2 = d.add_controllable("a2");
  const auto u1 = d.add_uncontrollable("u1");
  d.activated.push_back({u1, {iv(0, 1)}});
  d.constraints.push_back({Conjunct::distance(a1, u1, iv_inf(1))});
  d.constraints.push_back({Conjunct::distance(a2, a1, iv_inf(5))});
  d.constraints.push_back({Conjunct::distance(a2, u1, iv(0, 6))});
  d.validate();
  return d;
}

Dtnu single_execute() {
  Dtnu d;
  const auto a1 = d.add_controllable("a1");
  d.constraints.push_back({Conjunct::bounded(a1, iv(0, 10))});
  return d;
}

GenParams small_params(int min_c, int max_c, std::uint64_t seed) {
  GenParams p;
  p.min_controllables = min_c;
  p.max_controllables = max_c;
  p.max_uncontrollables = std::min(p.max_uncontrollables, min_c);
  p.seed = seed;
  return p;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("tdc_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace tdc::testing
