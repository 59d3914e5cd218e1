#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iotforge/diagnostics.hpp"
#include "iotforge/expr.hpp"

namespace iotforge {

// `field = expr` inside emit/notify payload builders and command argument
// lists.
struct Assignment {
  std::string name;
  ExprPtr value;
};

struct EmitAction {
  std::string event;
  std::vector<Assignment> assignments;
};

struct CommandAction {
  std::string actuator;
  std::string action;
  std::vector<Assignment> args;
};

struct RequestAction {
  std::string target;  // storage or request-based sensor
  ExprPtr key;
};

struct NotifyAction {
  std::string interactor;
  std::vector<Assignment> assignments;
};

struct SetStateAction {
  std::string field;
  ExprPtr value;
};

using RuleAction = std::variant<EmitAction, CommandAction, RequestAction, NotifyAction,
                                SetStateAction>;

struct RuleTrigger {
  bool onResponse = false;  // `on response ev` fires on request answers
  std::string event;
  ExprPtr guard;  // optional `when` clause
};

struct LogicRule {
  RuleTrigger trigger;
  std::vector<RuleAction> actions;  // executed left to right
  SourceSpan span;
};

struct ServiceRules {
  std::string service;
  std::vector<LogicRule> rules;
  SourceSpan span;

  // Verbatim `service X { ... }` block, preserved so device packages can
  // carry rules without re-rendering them.
  std::string sourceText;
};

struct LogicRuleSet {
  std::vector<ServiceRules> services;

  const ServiceRules* find_service(const std::string& name) const;
};

bool same_structure(const RuleAction& a, const RuleAction& b);
bool same_structure(const LogicRule& a, const LogicRule& b);
bool same_structure(const LogicRuleSet& a, const LogicRuleSet& b);

}  // namespace iotforge
