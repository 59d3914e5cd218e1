#include "iotforge/codegen.hpp"

#include <cmath>

#include "iotforge/format.hpp"
#include "iotforge/json_io.hpp"
#include "iotforge/parsers.hpp"
#include "iotforge/template_engine.hpp"

namespace iotforge {

namespace {

using nlohmann::json;

json event_to_json(const EventDecl& e) {
  return json{{"event", e.event}, {"payloadType", e.payloadType}};
}

EventDecl event_from_json(const json& j) {
  return EventDecl{j.at("event").get<std::string>(), j.at("payloadType").get<std::string>()};
}

// Sampling figures are written in seconds, matching the DSL.
json seconds_json(std::int64_t ms) {
  if (ms % 1000 == 0) return json(ms / 1000);
  return json(static_cast<double>(ms) / 1000.0);
}

std::int64_t ms_from_seconds_json(const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<std::int64_t>() * 1000;
  return std::llround(j.get<double>() * 1000.0);
}

json access_key_to_json(const AccessKey& k) {
  return json{{"name", k.name}, {"type", to_string(k.type)}};
}

FieldType field_type_from_string(const std::string& s) {
  if (s == "double") return FieldType::Double;
  if (s == "long") return FieldType::Long;
  if (s == "String") return FieldType::String;
  throw BadDescriptor("unknown field type '" + s + "'");
}

AccessKey access_key_from_json(const json& j) {
  return AccessKey{j.at("name").get<std::string>(),
                   field_type_from_string(j.at("type").get<std::string>())};
}

// --- scaffold plug-in -----------------------------------------------------

constexpr const char* kSensorScaffold =
    "// Driver scaffold: {kindLabel} sensor {name}\n"
    "driver {name} {\n"
    "  publishes {event}: {payloadType}\n"
    "{detail}"
    "  // bind the platform sampling API here\n"
    "}\n";

constexpr const char* kTagScaffold =
    "// Driver scaffold: tag {name}\n"
    "driver {name} {\n"
    "{#each events}  publishes {event}: {payloadType}\n"
    "{/each}"
    "  // bind the tag reader API here\n"
    "}\n";

constexpr const char* kActuatorScaffold =
    "// Driver scaffold: actuator {name}\n"
    "driver {name} {\n"
    "{#each actions}  action {action}({params})\n"
    "{/each}"
    "  // bind the actuation API here\n"
    "}\n";

constexpr const char* kStorageScaffold =
    "// Driver scaffold: storage {name}\n"
    "driver {name} {\n"
    "  answers {event}: {payloadType} accessed by {key}: {keyType}\n"
    "  // bind the database driver here\n"
    "}\n";

constexpr const char* kCustomServiceScaffold =
    "// Service scaffold: Custom service {name}\n"
    "abstract service {name} {\n"
    "{#each handlers}  abstract onNew{event}(data: {payloadType})\n"
    "{/each}"
    "{#each commands}  can command {actuator}.{action}\n"
    "{/each}"
    "{#each publications}  publishes {event}: {payloadType}\n"
    "{/each}"
    "}\n";

constexpr const char* kCommonServiceScaffold =
    "// Service scaffold: Common service {name} (logic fully generated)\n"
    "service {name} {\n"
    "{#each handlers}  buffers onNew{event}(data: {payloadType})\n"
    "{/each}"
    "  every {n} samples: publish {operator} over field '{field}'\n"
    "{#each publications}  publishes {event}: {payloadType}\n"
    "{/each}"
    "}\n";

constexpr const char* kSinkScaffold =
    "// Interaction scaffold: notification sink {name}\n"
    "sink {name} {\n"
    "  displays {event}: {payloadType}\n"
    "}\n";

std::string format_param_list(const std::vector<FieldDecl>& params) {
  std::string out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].name + ": " + to_string(params[i].type);
  }
  return out;
}

// Consumed events plus the response events of declared request targets, in
// declaration order. These become the onNew<Event> handlers.
std::vector<EventDecl> handler_events(const ServiceDecl& svc, const ArchitectureSpec& arch,
                                      const DomainSpec& domain) {
  std::vector<EventDecl> out;
  for (const auto& c : svc.consumes) {
    std::string payload;
    for (const auto& t : domain.tags) {
      for (const auto& g : t.generates) {
        if (g.event == c.event) payload = g.payloadType;
      }
    }
    for (const auto& s : domain.sensors) {
      if (s.generates.event == c.event) payload = s.generates.payloadType;
    }
    for (const auto& st : domain.storages) {
      if (st.generates.event == c.event) payload = st.generates.payloadType;
    }
    for (const auto& other : arch.services) {
      for (const auto& g : other.generates) {
        if (g.event == c.event) payload = g.payloadType;
      }
    }
    out.push_back(EventDecl{c.event, payload});
  }
  for (const auto& target : svc.requests) {
    if (const auto* st = domain.find_storage(target)) out.push_back(st->generates);
    if (const auto* s = domain.find_sensor(target)) {
      if (s->kind == SensorKind::RequestBased) out.push_back(s->generates);
    }
  }
  return out;
}

class NeutralScaffoldPlugin : public Plugin {
 public:
  std::string id() const override { return "neutral-scaffold"; }
  TargetKind target_kind() const override { return TargetKind::NeutralScaffold; }

  std::vector<GeneratedArtifact> domain_artifacts(const DomainSpec& domain) const override {
    std::vector<GeneratedArtifact> out;
    auto add = [&](const std::string& name, std::string content) {
      out.push_back({"drivers/" + name + ".txt", std::move(content),
                     GeneratedArtifact::Stage::DomainFramework});
    };
    for (const auto& tag : domain.tags) {
      std::vector<TemplateMap> events;
      for (const auto& g : tag.generates) {
        events.push_back({{"event", g.event}, {"payloadType", g.payloadType}});
      }
      add(tag.name, render_template(kTagScaffold, {{"name", tag.name}, {"events", events}}));
    }
    for (const auto& s : domain.sensors) {
      std::string kindLabel = s.kind == SensorKind::Periodic ? "periodic"
                              : s.kind == SensorKind::EventDriven ? "event-driven"
                                                                  : "request-based";
      std::string detail;
      if (s.kind == SensorKind::Periodic) {
        detail = "  sample period " + format_value(value_from_json(seconds_json(s.samplePeriodMs))) +
                 "s for " + format_value(value_from_json(seconds_json(s.durationMs))) + "s\n";
      } else if (s.kind == SensorKind::EventDriven) {
        detail = "  fires when " + format_expr(s.condition) + "\n";
      } else {
        detail = "  accessed by " + s.accessKey.name + ": " + to_string(s.accessKey.type) + "\n";
      }
      add(s.name, render_template(kSensorScaffold, {{"name", s.name},
                                                    {"kindLabel", kindLabel},
                                                    {"event", s.generates.event},
                                                    {"payloadType", s.generates.payloadType},
                                                    {"detail", detail}}));
    }
    for (const auto& act : domain.actuators) {
      std::vector<TemplateMap> actions;
      for (const auto& a : act.actions) {
        actions.push_back({{"action", a.name}, {"params", format_param_list(a.params)}});
      }
      add(act.name,
          render_template(kActuatorScaffold, {{"name", act.name}, {"actions", actions}}));
    }
    for (const auto& st : domain.storages) {
      add(st.name, render_template(kStorageScaffold, {{"name", st.name},
                                                      {"event", st.generates.event},
                                                      {"payloadType", st.generates.payloadType},
                                                      {"key", st.accessKey.name},
                                                      {"keyType", to_string(st.accessKey.type)}}));
    }
    return out;
  }

  std::vector<GeneratedArtifact> architecture_artifacts(const ArchitectureSpec& arch,
                                                        const DomainSpec& domain,
                                                        const LogicRuleSet*) const override {
    std::vector<GeneratedArtifact> out;
    for (const auto& svc : arch.services) {
      std::vector<TemplateMap> handlers;
      for (const auto& h : handler_events(svc, arch, domain)) {
        handlers.push_back({{"event", h.event}, {"payloadType", h.payloadType}});
      }
      std::vector<TemplateMap> publications;
      for (const auto& g : svc.generates) {
        publications.push_back({{"event", g.event}, {"payloadType", g.payloadType}});
      }
      std::string content;
      if (svc.kind == ServiceKind::Common) {
        content = render_template(
            kCommonServiceScaffold,
            {{"name", svc.name},
             {"handlers", handlers},
             {"publications", publications},
             {"n", std::to_string(svc.computes->windowSize)},
             {"operator", to_string(svc.computes->op)},
             {"field", svc.computes->field}});
      } else {
        std::vector<TemplateMap> commands;
        for (const auto& cmd : svc.commands) {
          commands.push_back({{"actuator", cmd.actuator}, {"action", cmd.action}});
        }
        content = render_template(kCustomServiceScaffold, {{"name", svc.name},
                                                           {"handlers", handlers},
                                                           {"commands", commands},
                                                           {"publications", publications}});
      }
      out.push_back({"services/" + svc.name + ".txt", std::move(content),
                     GeneratedArtifact::Stage::ArchitectureFramework});
    }
    return out;
  }

  std::vector<GeneratedArtifact> ui_artifacts(const UserInteractionSpec& ui) const override {
    std::vector<GeneratedArtifact> out;
    for (const auto& in : ui.interactors) {
      out.push_back({"sinks/" + in.name + ".txt",
                     render_template(kSinkScaffold, {{"name", in.name},
                                                     {"event", in.payload.event},
                                                     {"payloadType", in.payload.payloadType}}),
                     GeneratedArtifact::Stage::UIFramework});
    }
    return out;
  }
};

class SimDescriptorPlugin : public Plugin {
 public:
  std::string id() const override { return "sim-descriptor"; }
  TargetKind target_kind() const override { return TargetKind::SimDescriptor; }

  std::vector<GeneratedArtifact> domain_artifacts(const DomainSpec& domain) const override {
    std::vector<GeneratedArtifact> out;
    auto add = [&](const std::string& name, const json& j) {
      out.push_back({"drivers/" + name + ".json", canonical_json(j),
                     GeneratedArtifact::Stage::DomainFramework});
    };
    for (const auto& tag : domain.tags) add(tag.name, driver_descriptor(DriverDecl{tag}));
    for (const auto& s : domain.sensors) add(s.name, driver_descriptor(DriverDecl{s}));
    for (const auto& a : domain.actuators) add(a.name, driver_descriptor(DriverDecl{a}));
    for (const auto& st : domain.storages) add(st.name, driver_descriptor(DriverDecl{st}));
    return out;
  }

  std::vector<GeneratedArtifact> architecture_artifacts(const ArchitectureSpec& arch,
                                                        const DomainSpec&,
                                                        const LogicRuleSet* rules) const override {
    std::vector<GeneratedArtifact> out;
    for (const auto& svc : arch.services) {
      const ServiceRules* block = rules ? rules->find_service(svc.name) : nullptr;
      out.push_back({"services/" + svc.name + ".json",
                     canonical_json(service_descriptor(svc, block)),
                     GeneratedArtifact::Stage::ArchitectureFramework});
    }
    return out;
  }

  std::vector<GeneratedArtifact> ui_artifacts(const UserInteractionSpec& ui) const override {
    std::vector<GeneratedArtifact> out;
    for (const auto& in : ui.interactors) {
      out.push_back({"sinks/" + in.name + ".json", canonical_json(sink_descriptor(in)),
                     GeneratedArtifact::Stage::UIFramework});
    }
    return out;
  }
};

}  // namespace

PluginRegistry::PluginRegistry() {
  plugins_.push_back(std::make_unique<NeutralScaffoldPlugin>());
  plugins_.push_back(std::make_unique<SimDescriptorPlugin>());
}

std::vector<std::string> PluginRegistry::list_plugins() const {
  std::vector<std::string> ids;
  for (const auto& p : plugins_) ids.push_back(p->id());
  return ids;
}

void PluginRegistry::register_plugin(std::unique_ptr<Plugin> plugin) {
  for (const auto& p : plugins_) {
    if (p->id() == plugin->id()) throw DuplicatePlugin(plugin->id());
  }
  plugins_.push_back(std::move(plugin));
}

const Plugin& PluginRegistry::get(const std::string& id) const {
  for (const auto& p : plugins_) {
    if (p->id() == id) return *p;
  }
  throw UnknownPlugin(id);
}

std::vector<GeneratedArtifact> generate_domain_framework(const DomainSpec& domain,
                                                         const Plugin& plugin) {
  return plugin.domain_artifacts(domain);
}

std::vector<GeneratedArtifact> generate_architecture_framework(const ArchitectureSpec& arch,
                                                               const DomainSpec& domain,
                                                               const Plugin& plugin,
                                                               const LogicRuleSet* rules) {
  return plugin.architecture_artifacts(arch, domain, rules);
}

std::vector<GeneratedArtifact> generate_ui_framework(const UserInteractionSpec& ui,
                                                     const Plugin& plugin) {
  return plugin.ui_artifacts(ui);
}

// --- descriptor serialization ---------------------------------------------------

nlohmann::json service_descriptor(const ServiceDecl& svc, const ServiceRules* rules) {
  json j;
  j["serviceName"] = svc.name;
  j["kind"] = svc.kind == ServiceKind::Common ? "Common" : "Custom";
  j["subscriptions"] = json::array();
  for (const auto& c : svc.consumes) {
    j["subscriptions"].push_back(
        json{{"event", c.event},
             {"scope", c.scope == ConsumeScope::Global ? "global" : "sameLocation"}});
  }
  j["publications"] = json::array();
  for (const auto& g : svc.generates) j["publications"].push_back(event_to_json(g));
  j["requests"] = svc.requests;
  j["commands"] = json::array();
  for (const auto& cmd : svc.commands) {
    json args = json::array();
    for (const auto& a : cmd.args) {
      json arg{{"param", a.param}};
      if (a.field) arg["field"] = *a.field;
      if (a.literal) arg["literal"] = value_to_json(*a.literal);
      args.push_back(std::move(arg));
    }
    j["commands"].push_back(
        json{{"action", cmd.action}, {"actuator", cmd.actuator}, {"args", std::move(args)}});
  }
  if (svc.computes) {
    j["computeSpec"] = json{{"operator", to_string(svc.computes->op)},
                            {"n", svc.computes->windowSize},
                            {"field", svc.computes->field}};
  }
  if (rules) j["ruleRef"] = "rules/" + svc.name + ".rules";
  return j;
}

ServiceDecl service_from_descriptor(const nlohmann::json& j) {
  try {
    ServiceDecl svc;
    svc.name = j.at("serviceName").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind != "Common" && kind != "Custom") throw BadDescriptor("unknown service kind " + kind);
    svc.kind = kind == "Common" ? ServiceKind::Common : ServiceKind::Custom;
    for (const auto& s : j.at("subscriptions")) {
      ConsumeDecl c;
      c.event = s.at("event").get<std::string>();
      c.scope = s.at("scope").get<std::string>() == "global" ? ConsumeScope::Global
                                                             : ConsumeScope::SameLocation;
      svc.consumes.push_back(std::move(c));
    }
    for (const auto& p : j.at("publications")) svc.generates.push_back(event_from_json(p));
    for (const auto& r : j.at("requests")) svc.requests.push_back(r.get<std::string>());
    for (const auto& c : j.at("commands")) {
      CommandDecl cmd;
      cmd.action = c.at("action").get<std::string>();
      cmd.actuator = c.at("actuator").get<std::string>();
      for (const auto& a : c.at("args")) {
        ArgBinding arg;
        arg.param = a.at("param").get<std::string>();
        if (a.contains("field")) arg.field = a.at("field").get<std::string>();
        if (a.contains("literal")) arg.literal = value_from_json(a.at("literal"));
        cmd.args.push_back(std::move(arg));
      }
      svc.commands.push_back(std::move(cmd));
    }
    if (j.contains("computeSpec")) {
      const auto& cs = j.at("computeSpec");
      ComputeSpec spec;
      std::string op = cs.at("operator").get<std::string>();
      if (op == "AVG_BY_SAMPLE") spec.op = ComputeOp::AvgBySample;
      else if (op == "SUM_BY_SAMPLE") spec.op = ComputeOp::SumBySample;
      else if (op == "COUNT_BY_SAMPLE") spec.op = ComputeOp::CountBySample;
      else throw BadDescriptor("unknown COMPUTE operator " + op);
      spec.windowSize = cs.at("n").get<int>();
      spec.field = cs.at("field").get<std::string>();
      svc.computes = std::move(spec);
    }
    return svc;
  } catch (const json::exception& e) {
    throw BadDescriptor(std::string("malformed service descriptor: ") + e.what());
  }
}

nlohmann::json driver_descriptor(const DriverDecl& driver) {
  json j;
  if (const auto* tag = std::get_if<TagDecl>(&driver)) {
    j["driverName"] = tag->name;
    j["kind"] = "tag";
    j["generates"] = json::array();
    for (const auto& g : tag->generates) j["generates"].push_back(event_to_json(g));
  } else if (const auto* s = std::get_if<SensorDecl>(&driver)) {
    j["driverName"] = s->name;
    j["generates"] = event_to_json(s->generates);
    switch (s->kind) {
      case SensorKind::Periodic:
        j["kind"] = "periodic";
        j["d"] = seconds_json(s->samplePeriodMs);
        j["k"] = seconds_json(s->durationMs);
        break;
      case SensorKind::EventDriven:
        j["kind"] = "eventDriven";
        j["condition"] = format_expr(s->condition);
        break;
      case SensorKind::RequestBased:
        j["kind"] = "requestBased";
        j["accessKey"] = access_key_to_json(s->accessKey);
        break;
    }
  } else if (const auto* a = std::get_if<ActuatorDecl>(&driver)) {
    j["driverName"] = a->name;
    j["kind"] = "actuator";
    j["actions"] = json::array();
    for (const auto& action : a->actions) {
      json params = json::array();
      for (const auto& p : action.params) {
        params.push_back(json{{"name", p.name}, {"type", to_string(p.type)}});
      }
      j["actions"].push_back(json{{"name", action.name}, {"params", std::move(params)}});
    }
  } else {
    const auto& st = std::get<StorageDecl>(driver);
    j["driverName"] = st.name;
    j["kind"] = "storage";
    j["generates"] = event_to_json(st.generates);
    j["accessKey"] = access_key_to_json(st.accessKey);
  }
  return j;
}

DriverDecl driver_from_descriptor(const nlohmann::json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    std::string name = j.at("driverName").get<std::string>();
    if (kind == "tag") {
      TagDecl tag;
      tag.name = name;
      for (const auto& g : j.at("generates")) tag.generates.push_back(event_from_json(g));
      return tag;
    }
    if (kind == "actuator") {
      ActuatorDecl act;
      act.name = name;
      for (const auto& a : j.at("actions")) {
        ActionDecl action;
        action.name = a.at("name").get<std::string>();
        for (const auto& p : a.at("params")) {
          action.params.push_back(FieldDecl{
              p.at("name").get<std::string>(),
              field_type_from_string(p.at("type").get<std::string>())});
        }
        act.actions.push_back(std::move(action));
      }
      return act;
    }
    if (kind == "storage") {
      StorageDecl st;
      st.name = name;
      st.generates = event_from_json(j.at("generates"));
      st.accessKey = access_key_from_json(j.at("accessKey"));
      return st;
    }
    SensorDecl s;
    s.name = name;
    s.generates = event_from_json(j.at("generates"));
    if (kind == "periodic") {
      s.kind = SensorKind::Periodic;
      s.samplePeriodMs = ms_from_seconds_json(j.at("d"));
      s.durationMs = ms_from_seconds_json(j.at("k"));
    } else if (kind == "eventDriven") {
      s.kind = SensorKind::EventDriven;
      auto parsed = parse_expr_text(j.at("condition").get<std::string>(), "<descriptor>");
      if (!parsed.ok()) throw BadDescriptor("malformed condition in driver descriptor");
      s.condition = parsed.value;
    } else if (kind == "requestBased") {
      s.kind = SensorKind::RequestBased;
      s.accessKey = access_key_from_json(j.at("accessKey"));
    } else {
      throw BadDescriptor("unknown driver kind '" + kind + "'");
    }
    return s;
  } catch (const json::exception& e) {
    throw BadDescriptor(std::string("malformed driver descriptor: ") + e.what());
  }
}

nlohmann::json sink_descriptor(const InteractorDecl& interactor) {
  return json{{"sinkName", interactor.name}, {"notifies", event_to_json(interactor.payload)}};
}

InteractorDecl sink_from_descriptor(const nlohmann::json& j) {
  try {
    InteractorDecl in;
    in.name = j.at("sinkName").get<std::string>();
    in.payload = event_from_json(j.at("notifies"));
    return in;
  } catch (const json::exception& e) {
    throw BadDescriptor(std::string("malformed sink descriptor: ") + e.what());
  }
}

nlohmann::json record_type_to_json(const RecordTypeDecl& rec) {
  json fields = json::array();
  for (const auto& f : rec.fields) {
    fields.push_back(json{{"name", f.name}, {"type", to_string(f.type)}});
  }
  return json{{"name", rec.name}, {"fields", std::move(fields)}};
}

RecordTypeDecl record_type_from_json(const nlohmann::json& j) {
  try {
    RecordTypeDecl rec;
    rec.name = j.at("name").get<std::string>();
    for (const auto& f : j.at("fields")) {
      rec.fields.push_back(FieldDecl{f.at("name").get<std::string>(),
                                     field_type_from_string(f.at("type").get<std::string>())});
    }
    return rec;
  } catch (const json::exception& e) {
    throw BadDescriptor(std::string("malformed record type: ") + e.what());
  }
}

const std::string& driver_name(const DriverDecl& driver) {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, driver);
}

}  // namespace iotforge
