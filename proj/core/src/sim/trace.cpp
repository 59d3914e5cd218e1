#include "iotforge/sim/trace.hpp"

#include <algorithm>

#include "iotforge/json_io.hpp"

namespace iotforge {

namespace {

TraceEntry entry_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    TraceEntry e;
    e.sensor = j.at("sensor").get<std::string>();
    e.t = j.at("t").get<std::int64_t>();
    if (j.contains("fields")) {
      for (const auto& [name, v] : j.at("fields").items()) {
        e.fields[name] = value_from_json(v);
      }
    }
    if (j.contains("event")) e.event = j.at("event").get<std::string>();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw TraceError(where + ": malformed trace entry: " + ex.what());
  }
}

}  // namespace

void merge_trace_jsonl(SensorTraces& traces, const std::string& text, const std::string& file) {
  std::map<std::string, std::int64_t> lastSeen;
  size_t lineNo = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = file + ":" + std::to_string(lineNo);
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw TraceError(where + ": invalid JSON");
    TraceEntry e = entry_from_json(j, where);
    auto it = lastSeen.find(e.sensor);
    if (it != lastSeen.end() && e.t < it->second) {
      throw TraceError(where + ": timestamps for '" + e.sensor + "' must be non-decreasing");
    }
    lastSeen[e.sensor] = e.t;
    traces.bySensor[e.sensor].push_back(std::move(e));
  }
  // Merging several documents may interleave times; keep same-time entries in
  // arrival order.
  for (auto& [sensor, entries] : traces.bySensor) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const TraceEntry& a, const TraceEntry& b) { return a.t < b.t; });
  }
}

SensorTraces parse_trace_jsonl(const std::string& text, const std::string& file) {
  SensorTraces traces;
  merge_trace_jsonl(traces, text, file);
  return traces;
}

std::string trace_to_jsonl(const SensorTraces& traces) {
  std::string out;
  for (const auto& [sensor, entries] : traces.bySensor) {
    for (const auto& e : entries) {
      nlohmann::json fields = nlohmann::json::object();
      for (const auto& [name, v] : e.fields) fields[name] = value_to_json(v);
      nlohmann::json j{{"sensor", e.sensor}, {"t", e.t}, {"fields", std::move(fields)}};
      if (!e.event.empty()) j["event"] = e.event;
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

nlohmann::json parse_seed_json(const std::string& text, const std::string& file) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw TraceError(file + ": invalid JSON");
  if (!j.is_object()) throw TraceError(file + ": seed document must be a JSON object");
  for (const auto& [key, payload] : j.items()) {
    if (!payload.is_object()) {
      throw TraceError(file + ": seed payload for key '" + key + "' must be a JSON object");
    }
  }
  return j;
}

}  // namespace iotforge
