#pragma once

#include <tdc/gen.hpp>
#include <tdc/model.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace tdc::testing {

inline TimeValue tv(std::int64_t v) { return TimeValue(v); }
inline Interval iv(std::int64_t lo, std::int64_t hi) { return {TimeValue(lo), TimeValue(hi)}; }
inline Interval iv_inf(std::int64_t lo) { return {TimeValue(lo), TimeValue::infinity()}; }

std::filesystem::path data_path(const std::string& relative);
std::filesystem::path fake_sidecar_path();

/// A = {a1, a2}, U = {u1} activated on [0, 1], a1 - u1 >= 1, a2 - a1 >= 5,
/// a2 - u1 in [0, 6].
Dtnu gamma_prime();

/// A = {a1}, C = {{a1 in [0, 10]}}.
Dtnu single_execute();

/// Generator defaults scaled down to `min_c`..`max_c` controllables.
GenParams small_params(int min_c, int max_c, std::uint64_t seed);

/// Fresh scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace tdc::testing
