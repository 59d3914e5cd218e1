#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace iotforge {

// The run log is a closed set of observable interactions. Rule evaluation
// failures are reported separately, not logged here.
enum class LogKind {
  Publish,
  Deliver,
  Command,
  Request,
  Response,
  Notify,
  StateChange,
};

std::string to_string(LogKind kind);
LogKind log_kind_from_string(const std::string& name);

struct LogEntry {
  LogKind kind = LogKind::Publish;
  std::int64_t t = 0;    // virtual milliseconds
  std::int64_t seq = 0;  // global order, dense from 0
  nlohmann::json fields; // kind-specific payload

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

using RunLog = std::vector<LogEntry>;

// One compact JSON object per line, keys sorted, so equal logs have equal
// bytes.
std::string runlog_to_jsonl(const RunLog& log);
RunLog runlog_from_jsonl(const std::string& text);  // throws std::runtime_error

}  // namespace iotforge
