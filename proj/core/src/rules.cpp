#include "iotforge/rules.hpp"

namespace iotforge {

const ServiceRules* LogicRuleSet::find_service(const std::string& name) const {
  for (const auto& s : services) {
    if (s.service == name) return &s;
  }
  return nullptr;
}

namespace {

bool eq(const std::vector<Assignment>& a, const std::vector<Assignment>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !same_expr(a[i].value, b[i].value)) return false;
  }
  return true;
}

}  // namespace

bool same_structure(const RuleAction& a, const RuleAction& b) {
  if (a.index() != b.index()) return false;
  if (const auto* e = std::get_if<EmitAction>(&a)) {
    const auto& o = std::get<EmitAction>(b);
    return e->event == o.event && eq(e->assignments, o.assignments);
  }
  if (const auto* c = std::get_if<CommandAction>(&a)) {
    const auto& o = std::get<CommandAction>(b);
    return c->actuator == o.actuator && c->action == o.action && eq(c->args, o.args);
  }
  if (const auto* r = std::get_if<RequestAction>(&a)) {
    const auto& o = std::get<RequestAction>(b);
    return r->target == o.target && same_expr(r->key, o.key);
  }
  if (const auto* n = std::get_if<NotifyAction>(&a)) {
    const auto& o = std::get<NotifyAction>(b);
    return n->interactor == o.interactor && eq(n->assignments, o.assignments);
  }
  const auto& s = std::get<SetStateAction>(a);
  const auto& o = std::get<SetStateAction>(b);
  return s.field == o.field && same_expr(s.value, o.value);
}

bool same_structure(const LogicRule& a, const LogicRule& b) {
  if (a.trigger.onResponse != b.trigger.onResponse || a.trigger.event != b.trigger.event ||
      !same_expr(a.trigger.guard, b.trigger.guard)) {
    return false;
  }
  if (a.actions.size() != b.actions.size()) return false;
  for (size_t i = 0; i < a.actions.size(); ++i) {
    if (!same_structure(a.actions[i], b.actions[i])) return false;
  }
  return true;
}

bool same_structure(const LogicRuleSet& a, const LogicRuleSet& b) {
  if (a.services.size() != b.services.size()) return false;
  for (size_t i = 0; i < a.services.size(); ++i) {
    if (a.services[i].service != b.services[i].service) return false;
    if (a.services[i].rules.size() != b.services[i].rules.size()) return false;
    for (size_t j = 0; j < a.services[i].rules.size(); ++j) {
      if (!same_structure(a.services[i].rules[j], b.services[i].rules[j])) return false;
    }
  }
  return true;
}

}  // namespace iotforge
