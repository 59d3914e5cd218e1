#include "iotforge/spec_model.hpp"

#include <algorithm>

namespace iotforge {

std::string to_string(FieldType t) {
  switch (t) {
    case FieldType::Double: return "double";
    case FieldType::Long: return "long";
    case FieldType::String: return "String";
  }
  return "?";
}

ValueType value_type(FieldType t) {
  switch (t) {
    case FieldType::Double: return ValueType::Double;
    case FieldType::Long: return ValueType::Long;
    case FieldType::String: return ValueType::String;
  }
  return ValueType::String;
}

std::string to_string(SensorKind k) {
  switch (k) {
    case SensorKind::Periodic: return "periodic";
    case SensorKind::EventDriven: return "eventDriven";
    case SensorKind::RequestBased: return "requestBased";
  }
  return "?";
}

std::string to_string(ComputeOp op) {
  switch (op) {
    case ComputeOp::AvgBySample: return "AVG_BY_SAMPLE";
    case ComputeOp::SumBySample: return "SUM_BY_SAMPLE";
    case ComputeOp::CountBySample: return "COUNT_BY_SAMPLE";
  }
  return "?";
}

namespace {

template <typename T>
const T* find_by_name(const std::vector<T>& items, const std::string& name) {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

}  // namespace

const FieldDecl* RecordTypeDecl::find_field(const std::string& n) const {
  return find_by_name(fields, n);
}

const ActionDecl* ActuatorDecl::find_action(const std::string& n) const {
  return find_by_name(actions, n);
}

const RecordTypeDecl* DomainSpec::find_record(const std::string& n) const {
  return find_by_name(records, n);
}
const SensorDecl* DomainSpec::find_sensor(const std::string& n) const {
  return find_by_name(sensors, n);
}
const TagDecl* DomainSpec::find_tag(const std::string& n) const { return find_by_name(tags, n); }
const ActuatorDecl* DomainSpec::find_actuator(const std::string& n) const {
  return find_by_name(actuators, n);
}
const StorageDecl* DomainSpec::find_storage(const std::string& n) const {
  return find_by_name(storages, n);
}

bool DomainSpec::has_resource(const std::string& n) const {
  return find_tag(n) || find_sensor(n) || find_actuator(n) || find_storage(n);
}

bool ServiceDecl::generates_event(const std::string& event) const {
  return std::any_of(generates.begin(), generates.end(),
                     [&](const EventDecl& g) { return g.event == event; });
}

const ServiceDecl* ArchitectureSpec::find_service(const std::string& n) const {
  return find_by_name(services, n);
}

const InteractorDecl* UserInteractionSpec::find_interactor(const std::string& n) const {
  return find_by_name(interactors, n);
}
const RecordTypeDecl* UserInteractionSpec::find_record(const std::string& n) const {
  return find_by_name(records, n);
}

const DeviceDecl* DeploymentSpec::find_device(const std::string& n) const {
  return find_by_name(devices, n);
}

std::vector<std::string> event_producers(const DomainSpec& domain, const ArchitectureSpec& arch,
                                         const std::string& eventName) {
  std::vector<std::string> out;
  for (const auto& tag : domain.tags) {
    for (const auto& g : tag.generates) {
      if (g.event == eventName) {
        out.push_back(tag.name);
        break;
      }
    }
  }
  for (const auto& sensor : domain.sensors) {
    if (sensor.generates.event == eventName) out.push_back(sensor.name);
  }
  for (const auto& service : arch.services) {
    if (service.generates_event(eventName)) out.push_back(service.name);
  }
  return out;
}

std::variant<std::vector<FieldDecl>, ActionSignatureError> action_signature(
    const DomainSpec& domain, const std::string& actuator, const std::string& action) {
  const ActuatorDecl* act = domain.find_actuator(actuator);
  if (!act) {
    return ActionSignatureError{ActionSignatureError::Kind::UnknownActuator,
                                "unknown actuator '" + actuator + "'"};
  }
  const ActionDecl* decl = act->find_action(action);
  if (!decl) {
    return ActionSignatureError{ActionSignatureError::Kind::UnknownAction,
                                "actuator '" + actuator + "' has no action '" + action + "'"};
  }
  return decl->params;
}

namespace {

bool eq(const FieldDecl& a, const FieldDecl& b) { return a.name == b.name && a.type == b.type; }

bool eq(const EventDecl& a, const EventDecl& b) {
  return a.event == b.event && a.payloadType == b.payloadType;
}

bool eq(const AccessKey& a, const AccessKey& b) { return a.name == b.name && a.type == b.type; }

template <typename T, typename Eq>
bool all_eq(const std::vector<T>& a, const std::vector<T>& b, Eq f) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!f(a[i], b[i])) return false;
  }
  return true;
}

bool eq(const ArgBinding& a, const ArgBinding& b) {
  return a.param == b.param && a.field == b.field && a.literal == b.literal;
}

bool eq(const CommandDecl& a, const CommandDecl& b) {
  return a.action == b.action && a.actuator == b.actuator &&
         all_eq(a.args, b.args, [](const ArgBinding& x, const ArgBinding& y) { return eq(x, y); });
}

}  // namespace

bool same_structure(const RecordTypeDecl& a, const RecordTypeDecl& b) {
  return a.name == b.name &&
         all_eq(a.fields, b.fields, [](const FieldDecl& x, const FieldDecl& y) { return eq(x, y); });
}

bool same_structure(const ServiceDecl& a, const ServiceDecl& b) {
  if (a.name != b.name || a.kind != b.kind) return false;
  if (!all_eq(a.consumes, b.consumes, [](const ConsumeDecl& x, const ConsumeDecl& y) {
        return x.event == y.event && x.scope == y.scope;
      })) {
    return false;
  }
  if (a.computes.has_value() != b.computes.has_value()) return false;
  if (a.computes &&
      (a.computes->op != b.computes->op || a.computes->windowSize != b.computes->windowSize ||
       a.computes->field != b.computes->field)) {
    return false;
  }
  return a.requests == b.requests &&
         all_eq(a.generates, b.generates,
                [](const EventDecl& x, const EventDecl& y) { return eq(x, y); }) &&
         all_eq(a.commands, b.commands,
                [](const CommandDecl& x, const CommandDecl& y) { return eq(x, y); });
}

bool same_structure(const DomainSpec& a, const DomainSpec& b) {
  return all_eq(a.records, b.records,
                [](const RecordTypeDecl& x, const RecordTypeDecl& y) {
                  return same_structure(x, y);
                }) &&
         all_eq(a.tags, b.tags,
                [](const TagDecl& x, const TagDecl& y) {
                  return x.name == y.name && all_eq(x.generates, y.generates, [](const EventDecl& p, const EventDecl& q) { return eq(p, q); });
                }) &&
         all_eq(a.sensors, b.sensors,
                [](const SensorDecl& x, const SensorDecl& y) {
                  return x.name == y.name && x.kind == y.kind && eq(x.generates, y.generates) &&
                         x.samplePeriodMs == y.samplePeriodMs && x.durationMs == y.durationMs &&
                         same_expr(x.condition, y.condition) && eq(x.accessKey, y.accessKey);
                }) &&
         all_eq(a.actuators, b.actuators,
                [](const ActuatorDecl& x, const ActuatorDecl& y) {
                  return x.name == y.name &&
                         all_eq(x.actions, y.actions, [](const ActionDecl& p, const ActionDecl& q) {
                           return p.name == q.name && all_eq(p.params, q.params, [](const FieldDecl& m, const FieldDecl& n) { return eq(m, n); });
                         });
                }) &&
         all_eq(a.storages, b.storages, [](const StorageDecl& x, const StorageDecl& y) {
           return x.name == y.name && eq(x.generates, y.generates) && eq(x.accessKey, y.accessKey);
         });
}

bool same_structure(const ArchitectureSpec& a, const ArchitectureSpec& b) {
  return all_eq(a.services, b.services, [](const ServiceDecl& x, const ServiceDecl& y) {
    return same_structure(x, y);
  });
}

bool same_structure(const UserInteractionSpec& a, const UserInteractionSpec& b) {
  return all_eq(a.records, b.records,
                [](const RecordTypeDecl& x, const RecordTypeDecl& y) {
                  return same_structure(x, y);
                }) &&
         all_eq(a.interactors, b.interactors, [](const InteractorDecl& x, const InteractorDecl& y) {
           return x.name == y.name && eq(x.payload, y.payload);
         });
}

bool same_structure(const DeploymentSpec& a, const DeploymentSpec& b) {
  return all_eq(a.devices, b.devices, [](const DeviceDecl& x, const DeviceDecl& y) {
    return x.name == y.name && x.location == y.location && x.resources == y.resources &&
           x.platform == y.platform && x.protocol == y.protocol && x.database == y.database;
  });
}

}  // namespace iotforge
