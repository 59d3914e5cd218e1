#include "iotforge/sim/runlog.hpp"

#include <stdexcept>

namespace iotforge {

std::string to_string(LogKind kind) {
  switch (kind) {
    case LogKind::Publish: return "Publish";
    case LogKind::Deliver: return "Deliver";
    case LogKind::Command: return "Command";
    case LogKind::Request: return "Request";
    case LogKind::Response: return "Response";
    case LogKind::Notify: return "Notify";
    case LogKind::StateChange: return "StateChange";
  }
  return "?";
}

LogKind log_kind_from_string(const std::string& name) {
  if (name == "Publish") return LogKind::Publish;
  if (name == "Deliver") return LogKind::Deliver;
  if (name == "Command") return LogKind::Command;
  if (name == "Request") return LogKind::Request;
  if (name == "Response") return LogKind::Response;
  if (name == "Notify") return LogKind::Notify;
  if (name == "StateChange") return LogKind::StateChange;
  throw std::runtime_error("unknown log kind '" + name + "'");
}

std::string runlog_to_jsonl(const RunLog& log) {
  std::string out;
  for (const auto& e : log) {
    nlohmann::json j = e.fields;
    j["kind"] = to_string(e.kind);
    j["t"] = e.t;
    j["seq"] = e.seq;
    out += j.dump();
    out += '\n';
  }
  return out;
}

RunLog runlog_from_jsonl(const std::string& text) {
  RunLog log;
  size_t pos = 0;
  size_t lineNo = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw std::runtime_error("run log line " + std::to_string(lineNo) + ": invalid JSON");
    }
    LogEntry e;
    e.kind = log_kind_from_string(j.at("kind").get<std::string>());
    e.t = j.at("t").get<std::int64_t>();
    e.seq = j.at("seq").get<std::int64_t>();
    j.erase("kind");
    j.erase("t");
    j.erase("seq");
    e.fields = std::move(j);
    log.push_back(std::move(e));
  }
  return log;
}

}  // namespace iotforge
