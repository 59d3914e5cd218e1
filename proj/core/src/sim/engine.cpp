#include "iotforge/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "iotforge/json_io.hpp"
#include "iotforge/parsers.hpp"

namespace iotforge {

namespace {

std::optional<double> as_double(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* l = std::get_if<std::int64_t>(&v)) return static_cast<double>(*l);
  return std::nullopt;
}

const Value& scoped_field(const Payload* payload, const char* scopeName,
                          const std::string& field) {
  if (!payload) {
    throw EvalError(std::string(scopeName) + "." + field + " is not available here");
  }
  auto it = payload->find(field);
  if (it == payload->end()) {
    if (std::string(scopeName) == "state") {
      throw EvalError("state field '" + field + "' read before it was set");
    }
    throw EvalError(std::string(scopeName) + " payload has no field '" + field + "'");
  }
  return it->second;
}

Value eval_binary(BinaryOp op, const Value& lhs, const Value& rhs) {
  auto numeric = [&](const char* what) -> std::pair<double, double> {
    auto l = as_double(lhs);
    auto r = as_double(rhs);
    if (!l || !r) throw EvalError(std::string(what) + " needs numeric operands");
    return {*l, *r};
  };
  auto bothLong = std::holds_alternative<std::int64_t>(lhs) &&
                  std::holds_alternative<std::int64_t>(rhs);

  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div: {
      if (bothLong) {
        auto a = std::get<std::int64_t>(lhs);
        auto b = std::get<std::int64_t>(rhs);
        switch (op) {
          case BinaryOp::Add: return Value(a + b);
          case BinaryOp::Sub: return Value(a - b);
          case BinaryOp::Mul: return Value(a * b);
          default:
            if (b == 0) throw EvalError("long division by zero");
            return Value(a / b);
        }
      }
      auto [a, b] = numeric("arithmetic");
      switch (op) {
        case BinaryOp::Add: return Value(a + b);
        case BinaryOp::Sub: return Value(a - b);
        case BinaryOp::Mul: return Value(a * b);
        default: return Value(a / b);  // IEEE: x/0 is +-inf or nan
      }
    }
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: {
      auto [a, b] = numeric("comparison");
      switch (op) {
        case BinaryOp::Lt: return Value(a < b);
        case BinaryOp::Le: return Value(a <= b);
        case BinaryOp::Gt: return Value(a > b);
        default: return Value(a >= b);
      }
    }
    case BinaryOp::Eq:
    case BinaryOp::Ne: {
      bool eq;
      if (as_double(lhs) && as_double(rhs)) {
        eq = *as_double(lhs) == *as_double(rhs);
      } else if (lhs.index() == rhs.index()) {
        eq = lhs == rhs;
      } else {
        throw EvalError("cannot compare " + to_string(type_of(lhs)) + " with " +
                        to_string(type_of(rhs)));
      }
      return Value(op == BinaryOp::Eq ? eq : !eq);
    }
    case BinaryOp::And:
    case BinaryOp::Or:
      break;  // handled in eval_expr for short-circuiting
  }
  throw EvalError("unsupported operator");
}

}  // namespace

Value eval_expr(const Expr& e, const EvalEnv& env) {
  return std::visit(
      [&](const auto& node) -> Value {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, Expr::FieldRef>) {
          switch (node.scope) {
            case FieldScope::Bare: return scoped_field(env.bare, "sample", node.field);
            case FieldScope::Event: return scoped_field(env.event, "event", node.field);
            case FieldScope::State: return scoped_field(env.state, "state", node.field);
            case FieldScope::Response:
              return scoped_field(env.response, "response", node.field);
          }
          throw EvalError("bad field scope");
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          Value v = eval_expr(*node.operand, env);
          if (const auto* b = std::get_if<bool>(&v)) return Value(!*b);
          throw EvalError("! needs a boolean operand");
        } else {
          static_assert(std::is_same_v<T, Expr::Binary>);
          if (node.op == BinaryOp::And || node.op == BinaryOp::Or) {
            Value l = eval_expr(*node.lhs, env);
            const auto* lb = std::get_if<bool>(&l);
            if (!lb) throw EvalError("&& and || need boolean operands");
            if (node.op == BinaryOp::And && !*lb) return Value(false);
            if (node.op == BinaryOp::Or && *lb) return Value(true);
            Value r = eval_expr(*node.rhs, env);
            const auto* rb = std::get_if<bool>(&r);
            if (!rb) throw EvalError("&& and || need boolean operands");
            return Value(*rb);
          }
          return eval_binary(node.op, eval_expr(*node.lhs, env), eval_expr(*node.rhs, env));
        }
      },
      e.node);
}

namespace {

Value zero_value(FieldType type) {
  switch (type) {
    case FieldType::Double: return Value(0.0);
    case FieldType::Long: return Value(std::int64_t{0});
    case FieldType::String: return Value(std::string());
  }
  return Value(0.0);
}

// Coerce a live Value onto a declared field. Longs widen to double; that is
// the only implicit conversion.
std::optional<Value> coerce_value(const Value& v, FieldType type) {
  switch (type) {
    case FieldType::Double:
      if (std::holds_alternative<double>(v)) return v;
      if (const auto* l = std::get_if<std::int64_t>(&v)) return Value(static_cast<double>(*l));
      return std::nullopt;
    case FieldType::Long:
      if (std::holds_alternative<std::int64_t>(v)) return v;
      return std::nullopt;
    case FieldType::String:
      if (std::holds_alternative<std::string>(v)) return v;
      return std::nullopt;
  }
  return std::nullopt;
}

class Engine {
 public:
  Engine(const std::vector<DevicePackage>& packages, const SensorTraces& traces,
         const StorageSeeds& seeds, std::int64_t untilMs)
      : traces_(traces), seeds_(seeds), until_(untilMs) {
    broker_.emplace(sched_, [this](LogKind kind, nlohmann::json fields) {
      result_.log.push_back(LogEntry{kind, sched_.now(),
                                     static_cast<std::int64_t>(result_.log.size()),
                                     std::move(fields)});
    });
    decode_packages(packages);
    wire_services();
    wire_drivers();
    schedule_traces();
  }

  RunResult run() {
    sched_.run_until(until_);
    return std::move(result_);
  }

 private:
  struct ServiceRt {
    ServiceDecl decl;
    std::vector<LogicRule> rules;
    std::string device;
    std::string location;
    Payload state;
    std::vector<Value> window;
  };
  struct DriverRt {
    DriverDecl decl;
    std::string device;
    std::string location;
    bool prev = false;  // event-driven sensors: last condition result
  };

  VirtualScheduler sched_;
  std::optional<Broker> broker_;
  RunResult result_;
  const SensorTraces& traces_;
  const StorageSeeds& seeds_;
  std::int64_t until_;

  std::map<std::string, RecordTypeDecl> records_;
  std::map<std::string, std::string> eventRecord_;  // event -> record name
  std::map<std::string, ServiceRt> services_;
  std::map<std::string, DriverRt> drivers_;
  std::map<std::string, InteractorDecl> sinks_;

  void rule_error(const std::string& owner, const std::string& message) {
    result_.ruleErrors.push_back(RuleError{sched_.now(), owner, message});
  }

  const RecordTypeDecl& record_for_event(const std::string& event) const {
    auto it = eventRecord_.find(event);
    if (it == eventRecord_.end()) throw SimError("no payload type known for event '" + event + "'");
    auto rec = records_.find(it->second);
    if (rec == records_.end()) {
      throw SimError("record type '" + it->second + "' is not in any manifest");
    }
    return rec->second;
  }

  Payload zero_payload(const RecordTypeDecl& rec) const {
    Payload p;
    for (const auto& f : rec.fields) p[f.name] = zero_value(f.type);
    return p;
  }

  // Build a payload for `rec` from loose values: declared fields coerce (or
  // default to zero when absent), unknown extras are dropped.
  Payload coerce_payload(const RecordTypeDecl& rec, const std::map<std::string, Value>& values,
                         const std::string& where) const {
    Payload p;
    for (const auto& f : rec.fields) {
      auto it = values.find(f.name);
      if (it == values.end()) {
        p[f.name] = zero_value(f.type);
        continue;
      }
      auto coerced = coerce_value(it->second, f.type);
      if (!coerced) {
        throw TraceError(where + ": field '" + f.name + "' cannot be read as " +
                         to_string(f.type));
      }
      p[f.name] = *coerced;
    }
    return p;
  }

  Payload payload_from_json(const RecordTypeDecl& rec, const nlohmann::json& j,
                            const std::string& where) const {
    std::map<std::string, Value> values;
    for (const auto& [name, v] : j.items()) {
      if (v.is_null() || v.is_object() || v.is_array()) {
        throw TraceError(where + ": field '" + name + "' must be a scalar");
      }
      values[name] = value_from_json(v);
    }
    return coerce_payload(rec, values, where);
  }

  void learn_event(const EventDecl& e) {
    if (!e.event.empty() && !e.payloadType.empty()) eventRecord_[e.event] = e.payloadType;
  }

  void decode_packages(const std::vector<DevicePackage>& packages) {
    for (const auto& pkg : packages) {
      for (const auto& rec : pkg.manifest.recordTypes) records_[rec.name] = rec;
      for (const auto& item : pkg.drivers) {
        DriverRt rt;
        rt.decl = driver_from_descriptor(item.descriptor);
        rt.device = pkg.manifest.deviceName;
        rt.location = pkg.manifest.location;
        std::visit([&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, TagDecl>) {
            for (const auto& g : d.generates) learn_event(g);
          } else if constexpr (std::is_same_v<T, ActuatorDecl>) {
            // actuators generate nothing
          } else {
            learn_event(d.generates);
          }
        }, rt.decl);
        drivers_[item.name] = std::move(rt);
      }
      for (const auto& item : pkg.services) {
        ServiceRt rt;
        rt.decl = service_from_descriptor(item.descriptor);
        rt.device = pkg.manifest.deviceName;
        rt.location = pkg.manifest.location;
        for (const auto& g : rt.decl.generates) learn_event(g);
        auto rulesIt = pkg.rules.find(item.name);
        if (rulesIt != pkg.rules.end()) {
          auto parsed = parse_logic_rules(rulesIt->second, item.name + ".rules");
          if (!parsed.ok()) {
            throw SimError("packaged rules for service '" + item.name + "' do not parse");
          }
          const ServiceRules* block = parsed.value.find_service(item.name);
          if (!block) {
            throw SimError("packaged rules for service '" + item.name +
                           "' do not mention that service");
          }
          rt.rules = block->rules;
        }
        services_[item.name] = std::move(rt);
      }
      for (const auto& item : pkg.sinks) {
        InteractorDecl sink = sink_from_descriptor(item.descriptor);
        learn_event(sink.payload);
        sinks_[item.name] = std::move(sink);
        broker_->register_sink(item.name);
      }
    }
  }

  // Subscription order is fixed: sort by (device, service). Delivery fan-out
  // then follows this order for every publish.
  void wire_services() {
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& [name, rt] : services_) order.emplace_back(rt.device, name);
    std::sort(order.begin(), order.end());
    for (const auto& [device, name] : order) {
      ServiceRt* rt = &services_.at(name);
      for (const auto& c : rt->decl.consumes) {
        broker_->subscribe(c.event, name, rt->location, c.scope == ConsumeScope::Global,
                           [this, rt](const std::string& event, const Payload& payload) {
                             on_deliver(*rt, event, payload);
                           });
      }
    }
  }

  void wire_drivers() {
    for (auto& [name, rt] : drivers_) {
      const std::string driver = name;
      std::visit([&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ActuatorDecl>) {
          broker_->register_actuator(driver, [this, driver](const std::string& action,
                                                            const Payload& args,
                                                            const std::string&) {
            on_actuate(driver, action, args);
          });
        } else if constexpr (std::is_same_v<T, StorageDecl>) {
          register_responder(driver, d.generates);
        } else if constexpr (std::is_same_v<T, SensorDecl>) {
          if (d.kind == SensorKind::RequestBased) {
            register_responder(driver, d.generates);
          } else if (d.kind == SensorKind::Periodic) {
            if (d.samplePeriodMs <= 0) {
              throw SimError("sensor '" + driver + "' has a non-positive sample period");
            }
            if (d.samplePeriodMs <= d.durationMs) {
              schedule_periodic_tick(driver, d.samplePeriodMs);
            }
          }
        }
      }, rt.decl);
    }
  }

  void register_responder(const std::string& driver, const EventDecl& generates) {
    broker_->register_responder(driver, [this, driver, generates](const Value& key) {
      auto seedIt = seeds_.find(driver);
      if (seedIt == seeds_.end()) return std::pair<bool, Payload>{false, {}};
      std::string keyText = std::holds_alternative<std::string>(key)
                                ? std::get<std::string>(key)
                                : format_value(key);
      if (!seedIt->second.contains(keyText)) return std::pair<bool, Payload>{false, {}};
      const RecordTypeDecl& rec = record_for_event(generates.event);
      return std::pair<bool, Payload>{
          true, payload_from_json(rec, seedIt->second.at(keyText), "seed for " + driver)};
    });
  }

  // Periodic sensors publish at t = d, 2d, ... while t <= k, sampling the
  // latest trace entry at or before t (zeroes when none exists yet).
  void schedule_periodic_tick(const std::string& driver, std::int64_t t) {
    sched_.schedule_at(t, [this, driver, t]() {
      const DriverRt& rt = drivers_.at(driver);
      const auto& d = std::get<SensorDecl>(rt.decl);
      const RecordTypeDecl& rec = record_for_event(d.generates.event);
      Payload payload = zero_payload(rec);
      auto traceIt = traces_.bySensor.find(driver);
      if (traceIt != traces_.bySensor.end()) {
        const TraceEntry* latest = nullptr;
        for (const auto& e : traceIt->second) {
          if (e.t > t) break;
          latest = &e;
        }
        if (latest) payload = coerce_payload(rec, latest->fields, "trace for " + driver);
      }
      broker_->publish(d.generates.event, driver, rt.location, payload);
      std::int64_t next = t + d.samplePeriodMs;
      if (next <= d.durationMs) schedule_periodic_tick(driver, next);
    });
  }

  void schedule_traces() {
    for (const auto& [sensor, entries] : traces_.bySensor) {
      auto it = drivers_.find(sensor);
      if (it == drivers_.end()) {
        throw TraceError("trace mentions '" + sensor + "' but no such driver is packaged");
      }
      DriverRt* rt = &it->second;
      if (const auto* tag = std::get_if<TagDecl>(&rt->decl)) {
        for (const auto& e : entries) schedule_tag_entry(*rt, *tag, e);
      } else if (const auto* s = std::get_if<SensorDecl>(&rt->decl)) {
        if (s->kind == SensorKind::EventDriven) {
          for (const auto& e : entries) schedule_event_driven_entry(rt, *s, e);
        }
        // periodic sensors read the trace lazily; request-based take no trace
      } else {
        throw TraceError("trace mentions '" + sensor + "' which is not a sensor or tag");
      }
    }
  }

  void schedule_tag_entry(const DriverRt& rt, const TagDecl& tag, const TraceEntry& e) {
    std::string event = e.event;
    if (event.empty()) {
      if (tag.generates.size() != 1) {
        throw TraceError("trace for tag '" + tag.name +
                         "' must name one of its events in \"event\"");
      }
      event = tag.generates.front().event;
    } else {
      bool known = false;
      for (const auto& g : tag.generates) known = known || g.event == event;
      if (!known) {
        throw TraceError("tag '" + tag.name + "' does not generate event '" + event + "'");
      }
    }
    const std::string location = rt.location;
    const std::string name = tag.name;
    sched_.schedule_at(e.t, [this, name, location, event, fields = e.fields]() {
      const RecordTypeDecl& rec = record_for_event(event);
      broker_->publish(event, name, location,
                       coerce_payload(rec, fields, "trace for " + name));
    });
  }

  // Event-driven sensors publish on the rising edge of their condition.
  void schedule_event_driven_entry(DriverRt* rt, const SensorDecl& s, const TraceEntry& e) {
    sched_.schedule_at(e.t, [this, rt, fields = e.fields]() {
      const auto& d = std::get<SensorDecl>(rt->decl);
      const RecordTypeDecl& rec = record_for_event(d.generates.event);
      Payload payload = coerce_payload(rec, fields, "trace for " + d.name);
      EvalEnv env;
      env.bare = &payload;
      bool fire = false;
      try {
        Value v = eval_expr(*d.condition, env);
        const auto* b = std::get_if<bool>(&v);
        if (!b) throw EvalError("sensor condition must be boolean");
        fire = *b;
      } catch (const EvalError& ex) {
        rule_error(d.name, ex.what());
        return;
      }
      if (fire && !rt->prev) broker_->publish(d.generates.event, d.name, rt->location, payload);
      rt->prev = fire;
    });
  }

  // --- actuators -----------------------------------------------------------

  void on_actuate(const std::string& driver, const std::string& action, const Payload& args) {
    for (const auto& [field, value] : args) {
      result_.log.push_back(
          LogEntry{LogKind::StateChange, sched_.now(),
                   static_cast<std::int64_t>(result_.log.size()),
                   {{"owner", driver}, {"field", field}, {"value", value_to_json(value)}}});
    }
    if (args.empty() && (action == "On" || action == "Off")) {
      result_.log.push_back(
          LogEntry{LogKind::StateChange, sched_.now(),
                   static_cast<std::int64_t>(result_.log.size()),
                   {{"owner", driver},
                    {"field", "power"},
                    {"value", action == "On" ? "on" : "off"}}});
    }
  }

  // --- services ------------------------------------------------------------

  void on_deliver(ServiceRt& rt, const std::string& event, const Payload& payload) {
    if (rt.decl.kind == ServiceKind::Common) {
      on_common_sample(rt, payload);
      return;
    }
    EvalEnv env;
    env.event = &payload;
    env.state = &rt.state;
    for (const auto& rule : rt.rules) {
      if (rule.trigger.onResponse || rule.trigger.event != event) continue;
      execute_rule(rt, rule, env);
    }
  }

  void on_response(ServiceRt& rt, const std::string& event, const Payload& payload) {
    EvalEnv env;
    env.response = &payload;
    env.state = &rt.state;
    for (const auto& rule : rt.rules) {
      if (!rule.trigger.onResponse || rule.trigger.event != event) continue;
      execute_rule(rt, rule, env);
    }
  }

  void on_common_sample(ServiceRt& rt, const Payload& payload) {
    const ComputeSpec& spec = *rt.decl.computes;
    auto it = payload.find(spec.field);
    if (it == payload.end()) {
      rule_error(rt.decl.name, "sample has no field '" + spec.field + "'");
      return;
    }
    if (!as_double(it->second)) {
      rule_error(rt.decl.name, "field '" + spec.field + "' is not numeric");
      return;
    }
    rt.window.push_back(it->second);
    if (static_cast<int>(rt.window.size()) < spec.windowSize) return;

    Value output;
    switch (spec.op) {
      case ComputeOp::AvgBySample: {
        double sum = 0.0;
        for (const auto& v : rt.window) sum += *as_double(v);
        output = Value(sum / static_cast<double>(rt.window.size()));
        break;
      }
      case ComputeOp::SumBySample: {
        bool allLong = std::all_of(rt.window.begin(), rt.window.end(), [](const Value& v) {
          return std::holds_alternative<std::int64_t>(v);
        });
        if (allLong) {
          std::int64_t sum = 0;
          for (const auto& v : rt.window) sum += std::get<std::int64_t>(v);
          output = Value(sum);
        } else {
          double sum = 0.0;
          for (const auto& v : rt.window) sum += *as_double(v);
          output = Value(sum);
        }
        break;
      }
      case ComputeOp::CountBySample:
        output = Value(static_cast<std::int64_t>(rt.window.size()));
        break;
    }
    rt.window.clear();  // tumbling window

    for (const auto& g : rt.decl.generates) {
      const RecordTypeDecl& rec = record_for_event(g.event);
      Payload out = zero_payload(rec);
      auto field = out.find(spec.field);
      if (field != out.end()) {
        const FieldDecl* decl = nullptr;
        for (const auto& f : rec.fields) {
          if (f.name == spec.field) decl = &f;
        }
        if (decl && decl->type == FieldType::Long && std::holds_alternative<double>(output)) {
          field->second = Value(static_cast<std::int64_t>(std::llround(std::get<double>(output))));
        } else if (auto coerced = coerce_value(output, decl ? decl->type : FieldType::Double)) {
          field->second = *coerced;
        }
      }
      broker_->publish(g.event, rt.decl.name, rt.location, out);
    }
  }

  void execute_rule(ServiceRt& rt, const LogicRule& rule, const EvalEnv& env) {
    try {
      if (rule.trigger.guard) {
        Value v = eval_expr(*rule.trigger.guard, env);
        const auto* b = std::get_if<bool>(&v);
        if (!b) throw EvalError("rule guard must be boolean");
        if (!*b) return;
      }
      for (const auto& action : rule.actions) execute_action(rt, action, env);
    } catch (const EvalError& ex) {
      rule_error(rt.decl.name, ex.what());
    }
  }

  Payload build_record(const RecordTypeDecl& rec, const std::vector<Assignment>& assignments,
                       const EvalEnv& env) {
    Payload out = zero_payload(rec);
    for (const auto& a : assignments) {
      const FieldDecl* decl = nullptr;
      for (const auto& f : rec.fields) {
        if (f.name == a.name) decl = &f;
      }
      if (!decl) {
        throw EvalError("record '" + rec.name + "' has no field '" + a.name + "'");
      }
      Value v = eval_expr(*a.value, env);
      auto coerced = coerce_value(v, decl->type);
      if (!coerced) {
        throw EvalError("cannot assign " + to_string(type_of(v)) + " to field '" + a.name +
                        "' of type " + to_string(decl->type));
      }
      out[a.name] = *coerced;
    }
    return out;
  }

  void execute_action(ServiceRt& rt, const RuleAction& action, const EvalEnv& env) {
    if (const auto* emit = std::get_if<EmitAction>(&action)) {
      const RecordTypeDecl& rec = record_for_event(emit->event);
      broker_->publish(emit->event, rt.decl.name, rt.location,
                       build_record(rec, emit->assignments, env));
    } else if (const auto* cmd = std::get_if<CommandAction>(&action)) {
      auto driverIt = drivers_.find(cmd->actuator);
      if (driverIt == drivers_.end() ||
          !std::holds_alternative<ActuatorDecl>(driverIt->second.decl)) {
        throw SimError("no actuator '" + cmd->actuator + "' is packaged");
      }
      const auto& act = std::get<ActuatorDecl>(driverIt->second.decl);
      const ActionDecl* sig = nullptr;
      for (const auto& a : act.actions) {
        if (a.name == cmd->action) sig = &a;
      }
      if (!sig) {
        throw SimError("actuator '" + cmd->actuator + "' has no action '" + cmd->action + "'");
      }
      Payload args;
      for (const auto& [param, expr] : cmd->args) {
        const FieldDecl* decl = nullptr;
        for (const auto& p : sig->params) {
          if (p.name == param) decl = &p;
        }
        if (!decl) {
          throw EvalError("action '" + cmd->action + "' has no parameter '" + param + "'");
        }
        Value v = eval_expr(*expr, env);
        auto coerced = coerce_value(v, decl->type);
        if (!coerced) {
          throw EvalError("cannot pass " + to_string(type_of(v)) + " as parameter '" + param +
                          "'");
        }
        args[param] = *coerced;
      }
      broker_->send_command(cmd->actuator, cmd->action, args, rt.decl.name);
    } else if (const auto* req = std::get_if<RequestAction>(&action)) {
      auto driverIt = drivers_.find(req->target);
      if (driverIt == drivers_.end()) {
        throw SimError("no request target '" + req->target + "' is packaged");
      }
      const EventDecl* generates = nullptr;
      if (const auto* st = std::get_if<StorageDecl>(&driverIt->second.decl)) {
        generates = &st->generates;
      } else if (const auto* s = std::get_if<SensorDecl>(&driverIt->second.decl)) {
        if (s->kind == SensorKind::RequestBased) generates = &s->generates;
      }
      if (!generates) {
        throw SimError("'" + req->target + "' does not answer requests");
      }
      Value key = eval_expr(*req->key, env);
      std::string responseEvent = generates->event;
      ServiceRt* target = &rt;
      broker_->send_request(req->target, key, rt.decl.name,
                            [this, target, responseEvent](bool found, const Payload& payload) {
                              if (!found) return;
                              on_response(*target, responseEvent, payload);
                            });
    } else if (const auto* notify = std::get_if<NotifyAction>(&action)) {
      auto sinkIt = sinks_.find(notify->interactor);
      if (sinkIt == sinks_.end()) {
        throw SimError("no notification sink '" + notify->interactor + "' is packaged");
      }
      const RecordTypeDecl& rec = record_for_event(sinkIt->second.payload.event);
      broker_->notify(notify->interactor, sinkIt->second.payload.event,
                      build_record(rec, notify->assignments, env), rt.decl.name);
    } else {
      const auto& set = std::get<SetStateAction>(action);
      Value v = eval_expr(*set.value, env);
      rt.state[set.field] = v;
      result_.log.push_back(LogEntry{
          LogKind::StateChange, sched_.now(), static_cast<std::int64_t>(result_.log.size()),
          {{"owner", rt.decl.name}, {"field", set.field}, {"value", value_to_json(v)}}});
    }
  }
};

}  // namespace

RunResult run_simulation(const std::vector<DevicePackage>& packages, const SensorTraces& traces,
                         const StorageSeeds& seeds, std::int64_t untilMs) {
  Engine engine(packages, traces, seeds, untilMs);
  return engine.run();
}

}  // namespace iotforge
