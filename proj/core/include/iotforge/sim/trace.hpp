#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iotforge/expr.hpp"

namespace iotforge {

class TraceError : public std::runtime_error {
 public:
  explicit TraceError(const std::string& message) : std::runtime_error(message) {}
};

// One observation fed to a sensor or tag driver. "event" is only meaningful
// for tags that generate more than one event.
struct TraceEntry {
  std::string sensor;
  std::int64_t t = 0;  // virtual milliseconds
  std::map<std::string, Value> fields;
  std::string event;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Entries per driver, each list sorted by time (stable across input order).
struct SensorTraces {
  std::map<std::string, std::vector<TraceEntry>> bySensor;

  friend bool operator==(const SensorTraces&, const SensorTraces&) = default;
};

// resource name -> (key rendered as text -> payload object)
using StorageSeeds = std::map<std::string, nlohmann::json>;

// JSONL, one entry per line:
//   {"sensor": "TemperatureSensor", "t": 1000, "fields": {"tempValue": 21.5}}
// Within one document a driver's timestamps must be non-decreasing.
void merge_trace_jsonl(SensorTraces& traces, const std::string& text, const std::string& file);
SensorTraces parse_trace_jsonl(const std::string& text, const std::string& file);
std::string trace_to_jsonl(const SensorTraces& traces);

// A seed document is a single JSON object: key text -> payload object.
nlohmann::json parse_seed_json(const std::string& text, const std::string& file);

}  // namespace iotforge
