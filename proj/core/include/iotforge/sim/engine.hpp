#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iotforge/linker.hpp"
#include "iotforge/sim/broker.hpp"
#include "iotforge/sim/runlog.hpp"
#include "iotforge/sim/trace.hpp"

namespace iotforge {

// A rule (or sensor condition) that failed at runtime. The failing rule is
// skipped and the run continues; these never appear in the run log.
struct RuleError {
  std::int64_t t = 0;
  std::string service;
  std::string message;

  friend bool operator==(const RuleError&, const RuleError&) = default;
};

struct RunResult {
  RunLog log;
  std::vector<RuleError> ruleErrors;
};

// Replays the packaged application against sensor traces and storage seeds
// until the virtual clock passes untilMs. Everything is reconstructed from
// the packages alone; the source specs are not consulted.
RunResult run_simulation(const std::vector<DevicePackage>& packages, const SensorTraces& traces,
                         const StorageSeeds& seeds, std::int64_t untilMs);

// --- expression evaluation over live payloads ------------------------------

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

// Which payloads each field scope resolves against. Null means the scope is
// unavailable in this context.
struct EvalEnv {
  const Payload* bare = nullptr;      // sensor conditions
  const Payload* event = nullptr;     // event.<field> in rules
  const Payload* state = nullptr;     // state.<field>
  const Payload* response = nullptr;  // response.<field>
};

// Throws EvalError on missing fields (including state read before set), type
// mismatches, and long division by zero. Double division by zero follows
// IEEE 754.
Value eval_expr(const Expr& e, const EvalEnv& env);

}  // namespace iotforge
