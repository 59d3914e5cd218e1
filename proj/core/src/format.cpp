#include "iotforge/format.hpp"

#include <cctype>
#include <sstream>

namespace iotforge {

namespace {

// The grammar accepts bare identifiers for most attribute values but strings
// like "Node.js" need quoting.
bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#')) return false;
  }
  return true;
}

std::string quote(const std::string& s) { return format_value(Value{s}); }

std::string ident_or_quote(const std::string& s) {
  return valid_identifier(s) ? s : quote(s);
}

// Milliseconds back to the seconds-valued literal the grammar uses.
std::string format_seconds(std::int64_t ms) {
  if (ms % 1000 == 0) return format_value(Value{ms / 1000});
  return format_value(Value{static_cast<double>(ms) / 1000.0});
}

std::string format_params(const std::vector<FieldDecl>& params) {
  std::string out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].name + ": " + to_string(params[i].type);
  }
  return out;
}

void write_records(std::ostringstream& os, const std::vector<RecordTypeDecl>& records,
                   const char* indent) {
  os << indent << "structs {\n";
  for (const auto& rec : records) {
    os << indent << "  " << rec.name << " {\n";
    for (const auto& f : rec.fields) {
      os << indent << "    " << f.name << ": " << to_string(f.type) << ";\n";
    }
    os << indent << "  }\n";
  }
  os << indent << "}\n";
}

void write_assignments(std::ostringstream& os, const std::vector<Assignment>& assigns) {
  os << "(";
  for (size_t i = 0; i < assigns.size(); ++i) {
    if (i) os << ", ";
    os << assigns[i].name << " = " << format_expr(assigns[i].value);
  }
  os << ")";
}

}  // namespace

std::string format_spec(const DomainSpec& spec) {
  bool empty = spec.records.empty() && spec.tags.empty() && spec.sensors.empty() &&
               spec.actuators.empty() && spec.storages.empty();
  if (empty) return "resources { }\n";

  std::ostringstream os;
  os << "resources {\n";
  if (!spec.records.empty()) write_records(os, spec.records, "  ");
  if (!spec.tags.empty()) {
    os << "  tags {\n";
    for (const auto& tag : spec.tags) {
      os << "    " << tag.name << " {\n";
      for (const auto& g : tag.generates) {
        os << "      generate " << g.event << ": " << g.payloadType << ";\n";
      }
      os << "    }\n";
    }
    os << "  }\n";
  }
  for (auto kind : {SensorKind::Periodic, SensorKind::EventDriven, SensorKind::RequestBased}) {
    bool any = false;
    for (const auto& s : spec.sensors) any = any || s.kind == kind;
    if (!any) continue;
    const char* section = kind == SensorKind::Periodic ? "periodicSensors"
                          : kind == SensorKind::EventDriven ? "eventDrivenSensors"
                                                            : "requestBasedSensors";
    os << "  " << section << " {\n";
    for (const auto& s : spec.sensors) {
      if (s.kind != kind) continue;
      os << "    " << s.name << " {\n";
      os << "      generate " << s.generates.event << ": " << s.generates.payloadType << ";\n";
      if (kind == SensorKind::Periodic) {
        os << "      sample period " << format_seconds(s.samplePeriodMs) << " for "
           << format_seconds(s.durationMs) << ";\n";
      } else if (kind == SensorKind::EventDriven) {
        os << "      onCondition " << format_expr(s.condition) << ";\n";
      } else {
        os << "      accessed-by " << s.accessKey.name << ": " << to_string(s.accessKey.type)
           << ";\n";
      }
      os << "    }\n";
    }
    os << "  }\n";
  }
  if (!spec.actuators.empty()) {
    os << "  actuators {\n";
    for (const auto& act : spec.actuators) {
      os << "    " << act.name << " {\n";
      for (const auto& a : act.actions) {
        os << "      action " << a.name << "(" << format_params(a.params) << ");\n";
      }
      os << "    }\n";
    }
    os << "  }\n";
  }
  if (!spec.storages.empty()) {
    os << "  storages {\n";
    for (const auto& st : spec.storages) {
      os << "    " << st.name << " {\n";
      os << "      generate " << st.generates.event << ": " << st.generates.payloadType << ";\n";
      os << "      accessed-by " << st.accessKey.name << ": " << to_string(st.accessKey.type)
         << ";\n";
      os << "    }\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_spec(const ArchitectureSpec& spec) {
  if (spec.services.empty()) return "computationalServices { }\n";
  std::ostringstream os;
  os << "computationalServices {\n";
  for (const auto& svc : spec.services) {
    os << "  " << (svc.kind == ServiceKind::Common ? "Common" : "Custom") << " " << svc.name
       << " {\n";
    for (const auto& c : svc.consumes) {
      os << "    consume " << c.event;
      if (c.scope == ConsumeScope::Global) os << " from global";
      os << ";\n";
    }
    if (svc.computes) {
      os << "    COMPUTE " << to_string(svc.computes->op) << "(" << svc.computes->windowSize
         << ") on " << svc.computes->field << ";\n";
    }
    for (const auto& r : svc.requests) os << "    request to " << r << ";\n";
    for (const auto& g : svc.generates) {
      os << "    generate " << g.event << ": " << g.payloadType << ";\n";
    }
    for (const auto& cmd : svc.commands) {
      os << "    command " << cmd.action << "(";
      for (size_t i = 0; i < cmd.args.size(); ++i) {
        if (i) os << ", ";
        os << cmd.args[i].param << " = ";
        if (cmd.args[i].field) os << *cmd.args[i].field;
        else os << format_value(*cmd.args[i].literal);
      }
      os << ") to " << cmd.actuator << ";\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_spec(const UserInteractionSpec& spec) {
  if (spec.records.empty() && spec.interactors.empty()) return "userInteractions { }\n";
  std::ostringstream os;
  os << "userInteractions {\n";
  if (!spec.records.empty()) write_records(os, spec.records, "  ");
  for (const auto& in : spec.interactors) {
    os << "  notify " << in.name << "(" << in.payload.event << ": " << in.payload.payloadType
       << ");\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_spec(const DeploymentSpec& spec) {
  if (spec.devices.empty()) return "devices { }\n";
  std::ostringstream os;
  os << "devices {\n";
  for (const auto& dev : spec.devices) {
    os << "  " << dev.name << " {\n";
    os << "    location: " << quote(dev.location) << ";\n";
    if (!dev.resources.empty()) {
      os << "    resources: ";
      for (size_t i = 0; i < dev.resources.size(); ++i) {
        if (i) os << ", ";
        os << dev.resources[i];
      }
      os << ";\n";
    }
    if (!dev.platform.empty()) {
      os << "    language-platform: " << ident_or_quote(dev.platform) << ";\n";
    }
    os << "    protocol: " << ident_or_quote(dev.protocol) << ";\n";
    if (dev.database) os << "    database: " << ident_or_quote(*dev.database) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_rules(const LogicRuleSet& rules) {
  std::ostringstream os;
  bool first = true;
  for (const auto& block : rules.services) {
    if (!first) os << "\n";
    first = false;
    os << "service " << block.service << " {\n";
    for (const auto& rule : block.rules) {
      os << "  on ";
      if (rule.trigger.onResponse) os << "response ";
      os << rule.trigger.event;
      if (rule.trigger.guard) os << " when " << format_expr(rule.trigger.guard);
      os << " ->";
      for (size_t i = 0; i < rule.actions.size(); ++i) {
        os << (i ? "," : "") << "\n    ";
        const RuleAction& a = rule.actions[i];
        if (const auto* e = std::get_if<EmitAction>(&a)) {
          os << "emit " << e->event;
          write_assignments(os, e->assignments);
        } else if (const auto* c = std::get_if<CommandAction>(&a)) {
          os << "command " << c->actuator << "." << c->action;
          write_assignments(os, c->args);
        } else if (const auto* r = std::get_if<RequestAction>(&a)) {
          os << "request " << r->target << "(" << format_expr(r->key) << ")";
        } else if (const auto* n = std::get_if<NotifyAction>(&a)) {
          os << "notify " << n->interactor;
          write_assignments(os, n->assignments);
        } else {
          const auto& s = std::get<SetStateAction>(a);
          os << "set " << s.field << " = " << format_expr(s.value);
        }
      }
      os << ";\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace iotforge
