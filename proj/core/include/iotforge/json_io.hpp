#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "iotforge/expr.hpp"
#include "iotforge/spec_model.hpp"

namespace iotforge {

// All descriptor/plan/manifest files use one serialization: UTF-8, keys
// sorted lexicographically, 2-space indent, trailing newline.
std::string canonical_json(const nlohmann::json& j);

nlohmann::json value_to_json(const Value& v);

// Reads a JSON scalar as a Value: integral numbers become longs, other
// numbers doubles. Booleans and strings map directly.
Value value_from_json(const nlohmann::json& j);

// Coerces a JSON scalar to a declared field type. Longs widen to double;
// integral doubles narrow to long; everything else must match exactly.
// Returns nullopt when the value cannot represent the type.
std::optional<Value> coerce_to_field(const nlohmann::json& j, FieldType type);

}  // namespace iotforge
