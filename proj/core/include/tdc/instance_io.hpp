#pragma once

#include "tdc/model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdc {

inline constexpr std::string_view kInstanceFormat = "tdc-dtnu/1";

/// Malformed document: bad JSON, missing field, wrong type.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a "tdc-dtnu/1" instance. Structural problems raise SchemaError;
/// a well-formed document that breaks a model invariant raises
/// ValidationError.
Dtnu parse_dtnu(std::string_view text);

/// Canonical form: fixed key order, intervals as [lo, hi] where integers are
/// JSON numbers and everything else is a string ("12.5", "1/3", "inf").
std::string serialize_dtnu(const Dtnu& d);

Dtnu load_dtnu(const std::filesystem::path& path);
void save_dtnu(const std::filesystem::path& path, const Dtnu& d);

}  // namespace tdc
