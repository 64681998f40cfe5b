#pragma once

#include <cstdint>
#include <iosfwd>

namespace tdc::cli {

inline constexpr int kExitTdc = 0;
inline constexpr int kExitNotTdc = 1;
inline constexpr int kExitTimeout = 2;
inline constexpr int kExitError = 3;

/// Seed default taken from TDC_SEED, 0 when unset or unparsable.
std::uint64_t default_seed();

/// Entry point of the `tdc` executable. Never throws; errors map to kExitError.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdc::cli
