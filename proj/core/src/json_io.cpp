#include "iotforge/json_io.hpp"

#include <cmath>

namespace iotforge {

std::string canonical_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json value_to_json(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* n = std::get_if<std::int64_t>(&v)) return *n;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::get<bool>(v);
}

Value value_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<std::int64_t>();
  return j.get<double>();
}

std::optional<Value> coerce_to_field(const nlohmann::json& j, FieldType type) {
  switch (type) {
    case FieldType::Double:
      if (j.is_number()) return j.get<double>();
      return std::nullopt;
    case FieldType::Long:
      if (j.is_number_integer() || j.is_number_unsigned()) return j.get<std::int64_t>();
      if (j.is_number_float()) {
        double d = j.get<double>();
        if (std::nearbyint(d) == d) return static_cast<std::int64_t>(d);
      }
      return std::nullopt;
    case FieldType::String:
      if (j.is_string()) return j.get<std::string>();
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace iotforge
