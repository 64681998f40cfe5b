#pragma once

#include "tdc/instance_io.hpp"
#include "tdc/model.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace tdc::detail {

using Json = nlohmann::ordered_json;

/// Integers as JSON numbers, everything else as canonical text.
inline Json time_to_json(const TimeValue& v) {
  if (v.is_integer()) return Json(v.rational().numerator());
  return Json(v.to_string());
}

inline TimeValue time_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return TimeValue(j.get<std::int64_t>());
    if (j.is_number_float()) return TimeValue::parse(j.dump());
    if (j.is_string()) return TimeValue::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
  throw SchemaError(where + ": expected a number or a time string");
}

inline Json interval_to_json(const Interval& iv) {
  return Json::array({time_to_json(iv.lo), time_to_json(iv.hi)});
}

inline Interval interval_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(where + ": interval must be [lo, hi]");
  return {time_from_json(j[0], where), time_from_json(j[1], where)};
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw SchemaError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace tdc::detail
