#include "iotforge/validator.hpp"

#include <map>
#include <set>

namespace iotforge {

namespace {

bool is_numeric(ValueType t) { return t == ValueType::Double || t == ValueType::Long; }

// Whether a value of type `from` may be stored in a record field of type
// `to`. Longs widen to doubles; nothing else converts.
bool assignable(ValueType from, FieldType to) {
  switch (to) {
    case FieldType::Double: return from == ValueType::Double || from == ValueType::Long;
    case FieldType::Long: return from == ValueType::Long;
    case FieldType::String: return from == ValueType::String;
  }
  return false;
}

struct ProducerInfo {
  std::string payloadType;
  const RecordTypeDecl* record = nullptr;  // null when payloadType is unknown
};

// Field visibility while type-checking one expression. Bare references are
// only legal inside onCondition; event/response depend on the trigger.
struct TypeCtx {
  const RecordTypeDecl* bare = nullptr;
  const RecordTypeDecl* event = nullptr;
  const RecordTypeDecl* response = nullptr;
  bool bareAvail = false;
  bool eventAvail = false;
  bool responseAvail = false;
};

class Validator {
 public:
  explicit Validator(const Project& p) : p_(p) {}

  Diagnostics run() {
    collect_events();
    check_architecture();
    check_ui();
    check_conditions();
    check_rules();
    check_deployment();
    warn_unconsumed();
    sort_diagnostics(diags_);
    return std::move(diags_);
  }

 private:
  void error(std::string code, std::string msg, const SourceSpan& span) {
    diags_.push_back(make_error(std::move(code), std::move(msg), span));
  }
  void warn(std::string code, std::string msg, const SourceSpan& span) {
    diags_.push_back(make_warning(std::move(code), std::move(msg), span));
  }

  const RecordTypeDecl* resolve_ui_record(const std::string& name) const {
    if (p_.ui) {
      if (const auto* rec = p_.ui->find_record(name)) return rec;
    }
    return p_.domain.find_record(name);
  }

  void add_producer(const EventDecl& g, const SourceSpan& span, const std::string& owner) {
    const RecordTypeDecl* rec = p_.domain.find_record(g.payloadType);
    if (!rec) {
      error("UnknownRecordType",
            "'" + owner + "' generates '" + g.event + "' with unknown record type '" +
                g.payloadType + "'",
            span);
    }
    auto [it, inserted] = events_.try_emplace(g.event, ProducerInfo{g.payloadType, rec});
    if (!inserted && it->second.payloadType != g.payloadType) {
      error("V11",
            "event '" + g.event + "' is generated as '" + it->second.payloadType + "' and as '" +
                g.payloadType + "'",
            span);
    }
  }

  void collect_events() {
    for (const auto& tag : p_.domain.tags) {
      for (const auto& g : tag.generates) add_producer(g, tag.span, tag.name);
    }
    for (const auto& s : p_.domain.sensors) add_producer(s.generates, s.span, s.name);
    for (const auto& st : p_.domain.storages) add_producer(st.generates, st.span, st.name);
    for (const auto& svc : p_.arch.services) {
      for (const auto& g : svc.generates) add_producer(g, svc.span, svc.name);
    }
  }

  const RecordTypeDecl* event_record(const std::string& event) const {
    auto it = events_.find(event);
    return it == events_.end() ? nullptr : it->second.record;
  }

  // The response event a request target answers with, or nullopt.
  std::optional<EventDecl> response_event(const std::string& target) const {
    if (const auto* st = p_.domain.find_storage(target)) return st->generates;
    if (const auto* s = p_.domain.find_sensor(target)) {
      if (s->kind == SensorKind::RequestBased) return s->generates;
    }
    return std::nullopt;
  }

  std::optional<FieldType> access_key_type(const std::string& target) const {
    if (const auto* st = p_.domain.find_storage(target)) return st->accessKey.type;
    if (const auto* s = p_.domain.find_sensor(target)) {
      if (s->kind == SensorKind::RequestBased) return s->accessKey.type;
    }
    return std::nullopt;
  }

  void check_architecture() {
    for (const auto& svc : p_.arch.services) {
      if (svc.consumes.empty()) {
        warn("NoConsumes", "service '" + svc.name + "' consumes no events", svc.span);
      }
      for (const auto& c : svc.consumes) {
        if (event_producers(p_.domain, p_.arch, c.event).empty()) {
          error("V1", "'" + svc.name + "' consumes '" + c.event + "' but nothing generates it",
                svc.span);
        }
      }
      if (svc.computes) check_compute(svc);
      for (const auto& target : svc.requests) {
        if (!response_event(target)) {
          error("V2",
                "'" + svc.name + "' requests '" + target +
                    "' which is not a storage or request-based sensor",
                svc.span);
        }
      }
      for (const auto& cmd : svc.commands) check_arch_command(svc, cmd);
    }
  }

  void check_compute(const ServiceDecl& svc) {
    const std::string& field = svc.computes->field;
    auto check_side = [&](const std::string& event, const char* side) {
      const RecordTypeDecl* rec = event_record(event);
      if (!rec) return;  // reported via V1/UnknownRecordType
      const FieldDecl* f = rec->find_field(field);
      if (!f) {
        error("V7",
              "'" + svc.name + "' computes on '" + field + "' but " + side + " '" + event +
                  "' payload '" + rec->name + "' has no such field",
              svc.span);
      } else if (f->type == FieldType::String) {
        error("V7",
              "'" + svc.name + "' computes on '" + field + "' but the field is a String in '" +
                  rec->name + "'",
              svc.span);
      }
    };
    for (const auto& c : svc.consumes) check_side(c.event, "consumed event");
    for (const auto& g : svc.generates) {
      const RecordTypeDecl* rec = p_.domain.find_record(g.payloadType);
      if (!rec) continue;
      const FieldDecl* f = rec->find_field(field);
      if (!f) {
        error("V7",
              "'" + svc.name + "' computes on '" + field + "' but generated event '" + g.event +
                  "' payload '" + rec->name + "' has no such field",
              svc.span);
      } else if (f->type == FieldType::String) {
        error("V7",
              "'" + svc.name + "' computes on '" + field + "' but the field is a String in '" +
                  rec->name + "'",
              svc.span);
      }
    }
  }

  // Finds `field` across everything the service consumes; no match or an
  // ambiguous type is a command-binding problem.
  std::optional<FieldType> consumed_field_type(const ServiceDecl& svc, const std::string& field) {
    std::optional<FieldType> found;
    for (const auto& c : svc.consumes) {
      const RecordTypeDecl* rec = event_record(c.event);
      if (!rec) continue;
      if (const FieldDecl* f = rec->find_field(field)) {
        if (!found) found = f->type;
      }
    }
    return found;
  }

  void check_arch_command(const ServiceDecl& svc, const CommandDecl& cmd) {
    auto sig = action_signature(p_.domain, cmd.actuator, cmd.action);
    if (const auto* err = std::get_if<ActionSignatureError>(&sig)) {
      error("V3", "'" + svc.name + "' commands " + err->message, svc.span);
      return;
    }
    const auto& params = std::get<std::vector<FieldDecl>>(sig);
    if (cmd.args.size() != params.size()) {
      error("V3",
            "'" + svc.name + "' commands '" + cmd.action + "' with " +
                std::to_string(cmd.args.size()) + " arguments, expected " +
                std::to_string(params.size()),
            svc.span);
      return;
    }
    std::set<std::string> bound;
    for (const auto& arg : cmd.args) {
      const FieldDecl* param = nullptr;
      for (const auto& pd : params) {
        if (pd.name == arg.param) param = &pd;
      }
      if (!param) {
        error("V3",
              "'" + cmd.actuator + "." + cmd.action + "' has no parameter '" + arg.param + "'",
              svc.span);
        continue;
      }
      if (!bound.insert(arg.param).second) {
        error("V3", "parameter '" + arg.param + "' bound twice", svc.span);
        continue;
      }
      if (arg.literal) {
        ValueType vt = type_of(*arg.literal);
        if (vt == ValueType::Bool || !assignable(vt, param->type)) {
          error("V3",
                "'" + cmd.actuator + "." + cmd.action + "' parameter '" + arg.param + "' is " +
                    to_string(value_type(param->type)) + " but the bound literal is " +
                    to_string(vt),
                svc.span);
        }
      } else if (arg.field) {
        auto ft = consumed_field_type(svc, *arg.field);
        if (!ft) {
          error("V3",
                "'" + svc.name + "' binds '" + arg.param + "' to field '" + *arg.field +
                    "' which appears in no consumed payload",
                svc.span);
        } else if (!assignable(value_type(*ft), param->type)) {
          error("V3",
                "'" + cmd.actuator + "." + cmd.action + "' parameter '" + arg.param + "' is " +
                    to_string(value_type(param->type)) + " but field '" + *arg.field + "' is " +
                    to_string(value_type(*ft)),
                svc.span);
        }
      }
    }
  }

  void check_ui() {
    if (!p_.ui) return;
    for (const auto& in : p_.ui->interactors) {
      if (!resolve_ui_record(in.payload.payloadType)) {
        error("UnknownRecordType",
              "interactor '" + in.name + "' uses unknown record type '" + in.payload.payloadType +
                  "'",
              in.span);
      }
    }
  }

  void check_conditions() {
    for (const auto& s : p_.domain.sensors) {
      if (s.kind != SensorKind::EventDriven || !s.condition) continue;
      TypeCtx ctx;
      ctx.bare = p_.domain.find_record(s.generates.payloadType);
      ctx.bareAvail = true;
      if (!ctx.bare) continue;  // UnknownRecordType already reported
      auto t = infer(s.condition, ctx, s.span, "BadCondition");
      if (t && *t != ValueType::Bool) {
        error("BadCondition",
              "onCondition of '" + s.name + "' has type " + to_string(*t) + ", expected Bool",
              s.span);
      }
    }
  }

  // --- rules ---------------------------------------------------------------

  void check_rules() {
    std::set<std::string> withRules;
    for (const auto& block : p_.rules.services) {
      const ServiceDecl* svc = p_.arch.find_service(block.service);
      if (!svc) {
        error("V12", "rules for unknown service '" + block.service + "'", block.span);
        continue;
      }
      if (svc->kind == ServiceKind::Common) {
        error("V12",
              "'" + block.service + "' is a Common service; its logic is generated, not rule-based",
              block.span);
        continue;
      }
      withRules.insert(block.service);
      for (const auto& rule : block.rules) check_rule(*svc, rule);
    }
    for (const auto& svc : p_.arch.services) {
      if (svc.kind != ServiceKind::Custom) continue;
      bool hasBehavior = !svc.commands.empty() || !svc.generates.empty() || !svc.requests.empty();
      if (hasBehavior && !withRules.count(svc.name)) {
        warn("InertService",
             "Custom service '" + svc.name +
                 "' declares outputs but has no rules; it will do nothing at runtime",
             svc.span);
      }
    }
  }

  void check_rule(const ServiceDecl& svc, const LogicRule& rule) {
    TypeCtx ctx;
    if (rule.trigger.onResponse) {
      bool matched = false;
      for (const auto& target : svc.requests) {
        auto resp = response_event(target);
        if (resp && resp->event == rule.trigger.event) {
          matched = true;
          ctx.response = p_.domain.find_record(resp->payloadType);
        }
      }
      if (!matched) {
        error("V12",
              "'" + svc.name + "' handles response '" + rule.trigger.event +
                  "' but requests no target answering it",
              rule.span);
      }
      ctx.responseAvail = true;
    } else {
      bool consumed = false;
      for (const auto& c : svc.consumes) consumed = consumed || c.event == rule.trigger.event;
      if (!consumed) {
        error("V12",
              "'" + svc.name + "' has a rule on '" + rule.trigger.event +
                  "' but does not consume it",
              rule.span);
      }
      ctx.event = event_record(rule.trigger.event);
      ctx.eventAvail = true;
    }

    if (rule.trigger.guard) {
      auto t = infer(rule.trigger.guard, ctx, rule.span, "V6");
      if (t && *t != ValueType::Bool) {
        error("V6", "rule guard has type " + to_string(*t) + ", expected Bool", rule.span);
      }
    }

    for (const auto& action : rule.actions) check_action(svc, action, ctx, rule.span);
  }

  void check_assignments(const std::vector<Assignment>& assigns, const RecordTypeDecl* rec,
                         const std::string& what, const TypeCtx& ctx, const SourceSpan& span) {
    std::set<std::string> seen;
    for (const auto& a : assigns) {
      if (!seen.insert(a.name).second) {
        error("V6", "field '" + a.name + "' assigned twice in " + what, span);
      }
      auto t = infer(a.value, ctx, span, "V6");
      if (!rec) continue;
      const FieldDecl* f = rec->find_field(a.name);
      if (!f) {
        error("V6", "record '" + rec->name + "' has no field '" + a.name + "' (" + what + ")",
              span);
        continue;
      }
      if (t && !assignable(*t, f->type)) {
        error("V6",
              "field '" + a.name + "' of '" + rec->name + "' is " +
                  to_string(value_type(f->type)) + " but the assigned expression is " +
                  to_string(*t) + " (" + what + ")",
              span);
      }
    }
  }

  void check_action(const ServiceDecl& svc, const RuleAction& action, const TypeCtx& ctx,
                    const SourceSpan& span) {
    if (const auto* e = std::get_if<EmitAction>(&action)) {
      if (!svc.generates_event(e->event)) {
        error("V12", "'" + svc.name + "' emits '" + e->event + "' without declaring it", span);
        return;
      }
      check_assignments(e->assignments, event_record(e->event), "emit " + e->event, ctx, span);
    } else if (const auto* c = std::get_if<CommandAction>(&action)) {
      bool declared = false;
      for (const auto& cd : svc.commands) {
        declared = declared || (cd.actuator == c->actuator && cd.action == c->action);
      }
      if (!declared) {
        error("V12",
              "'" + svc.name + "' commands '" + c->actuator + "." + c->action +
                  "' without declaring it",
              span);
      }
      auto sig = action_signature(p_.domain, c->actuator, c->action);
      if (const auto* err = std::get_if<ActionSignatureError>(&sig)) {
        if (declared) return;  // already reported against the arch declaration
        error("V3", "'" + svc.name + "' commands " + err->message, span);
        return;
      }
      const auto& params = std::get<std::vector<FieldDecl>>(sig);
      if (c->args.size() != params.size()) {
        error("V3",
              "'" + c->actuator + "." + c->action + "' takes " + std::to_string(params.size()) +
                  " arguments, rule passes " + std::to_string(c->args.size()),
              span);
        return;
      }
      std::set<std::string> bound;
      for (const auto& arg : c->args) {
        const FieldDecl* param = nullptr;
        for (const auto& pd : params) {
          if (pd.name == arg.name) param = &pd;
        }
        if (!param) {
          error("V3", "'" + c->actuator + "." + c->action + "' has no parameter '" + arg.name + "'",
                span);
          continue;
        }
        if (!bound.insert(arg.name).second) {
          error("V3", "parameter '" + arg.name + "' bound twice", span);
          continue;
        }
        auto t = infer(arg.value, ctx, span, "V6");
        if (t && !assignable(*t, param->type)) {
          error("V6",
                "parameter '" + arg.name + "' of '" + c->actuator + "." + c->action + "' is " +
                    to_string(value_type(param->type)) + " but the argument is " + to_string(*t),
                span);
        }
      }
    } else if (const auto* r = std::get_if<RequestAction>(&action)) {
      bool declared = false;
      for (const auto& target : svc.requests) declared = declared || target == r->target;
      if (!declared) {
        error("V2", "'" + svc.name + "' requests '" + r->target + "' without declaring it", span);
        return;
      }
      auto t = infer(r->key, ctx, span, "V6");
      auto keyType = access_key_type(r->target);
      if (t && keyType && !assignable(*t, *keyType)) {
        error("V6",
              "request key for '" + r->target + "' is " + to_string(value_type(*keyType)) +
                  " but the expression is " + to_string(*t),
              span);
      }
    } else if (const auto* n = std::get_if<NotifyAction>(&action)) {
      const InteractorDecl* in = p_.ui ? p_.ui->find_interactor(n->interactor) : nullptr;
      if (!in) {
        error("V5", "'" + svc.name + "' notifies unknown interactor '" + n->interactor + "'",
              span);
        return;
      }
      check_assignments(n->assignments, resolve_ui_record(in->payload.payloadType),
                        "notify " + n->interactor, ctx, span);
    } else {
      const auto& s = std::get<SetStateAction>(action);
      infer(s.value, ctx, span, "V6");
    }
  }

  // Expression type inference; nullopt means "unknown" (state fields and
  // already-reported errors), which unifies with everything downstream.
  std::optional<ValueType> infer(const ExprPtr& e, const TypeCtx& ctx, const SourceSpan& span,
                                 const std::string& code) {
    if (!e) return std::nullopt;
    if (const auto* lit = std::get_if<Expr::Literal>(&e->node)) return type_of(lit->value);
    if (const auto* ref = std::get_if<Expr::FieldRef>(&e->node)) {
      switch (ref->scope) {
        case FieldScope::Bare: {
          if (!ctx.bareAvail) {
            error(code,
                  "unqualified field '" + ref->field +
                      "'; rules must use event., state. or response.",
                  span);
            return std::nullopt;
          }
          if (!ctx.bare) return std::nullopt;
          if (const FieldDecl* f = ctx.bare->find_field(ref->field)) {
            return value_type(f->type);
          }
          error(code, "record '" + ctx.bare->name + "' has no field '" + ref->field + "'", span);
          return std::nullopt;
        }
        case FieldScope::Event: {
          if (!ctx.eventAvail) {
            error(code, "event fields are not available in this rule", span);
            return std::nullopt;
          }
          if (!ctx.event) return std::nullopt;
          if (const FieldDecl* f = ctx.event->find_field(ref->field)) {
            return value_type(f->type);
          }
          error(code, "record '" + ctx.event->name + "' has no field '" + ref->field + "'", span);
          return std::nullopt;
        }
        case FieldScope::Response: {
          if (!ctx.responseAvail) {
            error(code, "response fields are only available in 'on response' rules", span);
            return std::nullopt;
          }
          if (!ctx.response) return std::nullopt;
          if (const FieldDecl* f = ctx.response->find_field(ref->field)) {
            return value_type(f->type);
          }
          error(code, "record '" + ctx.response->name + "' has no field '" + ref->field + "'",
                span);
          return std::nullopt;
        }
        case FieldScope::State:
          return std::nullopt;  // dynamically typed
      }
      return std::nullopt;
    }
    if (const auto* un = std::get_if<Expr::Unary>(&e->node)) {
      auto t = infer(un->operand, ctx, span, code);
      if (t && *t != ValueType::Bool) {
        error(code, "'!' needs a Bool operand, got " + to_string(*t), span);
      }
      return ValueType::Bool;
    }
    const auto& bin = std::get<Expr::Binary>(e->node);
    auto lt = infer(bin.lhs, ctx, span, code);
    auto rt = infer(bin.rhs, ctx, span, code);
    auto requireNumeric = [&](const std::optional<ValueType>& t) {
      if (t && !is_numeric(*t)) {
        error(code, std::string("operator '") + binary_op_token(bin.op) +
                        "' needs numeric operands, got " + to_string(*t),
              span);
        return false;
      }
      return true;
    };
    switch (bin.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
      case BinaryOp::Mul:
      case BinaryOp::Div: {
        bool lo = requireNumeric(lt), ro = requireNumeric(rt);
        if (!lo || !ro || !lt || !rt) return std::nullopt;
        return (*lt == ValueType::Double || *rt == ValueType::Double) ? ValueType::Double
                                                                      : ValueType::Long;
      }
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
        requireNumeric(lt);
        requireNumeric(rt);
        return ValueType::Bool;
      case BinaryOp::Eq:
      case BinaryOp::Ne: {
        if (lt && rt) {
          bool bothNumeric = is_numeric(*lt) && is_numeric(*rt);
          if (!bothNumeric && *lt != *rt) {
            error(code, std::string("operator '") + binary_op_token(bin.op) +
                            "' compares " + to_string(*lt) + " with " + to_string(*rt),
                  span);
          }
        }
        return ValueType::Bool;
      }
      case BinaryOp::And:
      case BinaryOp::Or: {
        for (const auto& t : {lt, rt}) {
          if (t && *t != ValueType::Bool) {
            error(code, std::string("operator '") + binary_op_token(bin.op) +
                            "' needs Bool operands, got " + to_string(*t),
                  span);
          }
        }
        return ValueType::Bool;
      }
    }
    return std::nullopt;
  }

  // --- deployment ------------------------------------------------------------

  void check_deployment() {
    std::map<std::string, std::vector<const DeviceDecl*>> placement;
    for (const auto& dev : p_.deploy.devices) {
      for (const auto& res : dev.resources) {
        bool known = p_.domain.has_resource(res) || p_.arch.find_service(res) ||
                     (p_.ui && p_.ui->find_interactor(res));
        if (!known) {
          error("V4", "device '" + dev.name + "' lists unknown resource '" + res + "'", dev.span);
          continue;
        }
        placement[res].push_back(&dev);
        if (p_.domain.find_storage(res) && !dev.database) {
          error("V9",
                "device '" + dev.name + "' hosts storage '" + res + "' but declares no database",
                dev.span);
        }
      }
    }
    auto check_driver = [&](const std::string& name, const SourceSpan& span) {
      auto it = placement.find(name);
      if (it == placement.end()) {
        error("V8", "driver '" + name + "' is placed on no device", span);
      } else if (it->second.size() > 1) {
        error("V10",
              "driver '" + name + "' is placed on " + std::to_string(it->second.size()) +
                  " devices ('" + it->second[0]->name + "', '" + it->second[1]->name + "', …)",
              span);
      }
    };
    for (const auto& tag : p_.domain.tags) check_driver(tag.name, tag.span);
    for (const auto& s : p_.domain.sensors) check_driver(s.name, s.span);
    for (const auto& a : p_.domain.actuators) check_driver(a.name, a.span);
    for (const auto& st : p_.domain.storages) check_driver(st.name, st.span);
  }

  void warn_unconsumed() {
    std::set<std::string> consumed;
    for (const auto& svc : p_.arch.services) {
      for (const auto& c : svc.consumes) consumed.insert(c.event);
    }
    auto check = [&](const EventDecl& g, const std::string& owner, const SourceSpan& span) {
      if (!consumed.count(g.event)) {
        warn("UnconsumedEvent", "'" + owner + "' generates '" + g.event + "' but nothing consumes it",
             span);
      }
    };
    for (const auto& tag : p_.domain.tags) {
      for (const auto& g : tag.generates) check(g, tag.name, tag.span);
    }
    for (const auto& s : p_.domain.sensors) {
      if (s.kind == SensorKind::RequestBased) continue;  // answered by request, not consumed
      check(s.generates, s.name, s.span);
    }
    for (const auto& svc : p_.arch.services) {
      for (const auto& g : svc.generates) check(g, svc.name, svc.span);
    }
  }

  const Project& p_;
  Diagnostics diags_;
  std::map<std::string, ProducerInfo> events_;
};

}  // namespace

Diagnostics validate_project(const Project& p) { return Validator(p).run(); }

DataflowGraph dataflow_graph(const Project& p) {
  Diagnostics diags = validate_project(p);
  if (has_errors(diags)) {
    throw InvalidProject("dataflow_graph requires a project with zero validation errors");
  }

  DataflowGraph g;
  for (const auto& tag : p.domain.tags) g.nodes.push_back(tag.name);
  for (const auto& s : p.domain.sensors) g.nodes.push_back(s.name);
  for (const auto& a : p.domain.actuators) g.nodes.push_back(a.name);
  for (const auto& st : p.domain.storages) g.nodes.push_back(st.name);
  for (const auto& svc : p.arch.services) g.nodes.push_back(svc.name);
  if (p.ui) {
    for (const auto& in : p.ui->interactors) g.nodes.push_back(in.name);
  }

  auto add_edge = [&](DataflowEdge e) {
    for (const auto& existing : g.edges) {
      if (existing == e) return;
    }
    g.edges.push_back(std::move(e));
  };

  for (const auto& svc : p.arch.services) {
    for (const auto& c : svc.consumes) {
      for (const auto& producer : event_producers(p.domain, p.arch, c.event)) {
        add_edge({EdgeKind::Event, producer, svc.name, c.event});
      }
    }
    for (const auto& target : svc.requests) {
      std::string label;
      if (const auto* st = p.domain.find_storage(target)) label = st->generates.event;
      else if (const auto* s = p.domain.find_sensor(target)) label = s->generates.event;
      add_edge({EdgeKind::Request, svc.name, target, label});
    }
    for (const auto& cmd : svc.commands) {
      add_edge({EdgeKind::Command, svc.name, cmd.actuator, cmd.action});
    }
  }
  for (const auto& block : p.rules.services) {
    for (const auto& rule : block.rules) {
      for (const auto& action : rule.actions) {
        if (const auto* n = std::get_if<NotifyAction>(&action)) {
          std::string label;
          if (p.ui) {
            if (const auto* in = p.ui->find_interactor(n->interactor)) label = in->payload.event;
          }
          add_edge({EdgeKind::Notify, block.service, n->interactor, label});
        }
      }
    }
  }
  return g;
}

}  // namespace iotforge
