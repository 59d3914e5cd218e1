#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iotforge/diagnostics.hpp"
#include "iotforge/expr.hpp"

namespace iotforge {

// Record fields and action parameters are restricted to these three types.
enum class FieldType { Double, Long, String };

std::string to_string(FieldType t);
ValueType value_type(FieldType t);

struct FieldDecl {
  std::string name;
  FieldType type = FieldType::Double;
};

struct RecordTypeDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  SourceSpan span;

  const FieldDecl* find_field(const std::string& name) const;
};

// An event a resource or service produces, together with its payload record.
struct EventDecl {
  std::string event;
  std::string payloadType;
};

struct TagDecl {
  std::string name;
  std::vector<EventDecl> generates;  // at least one
  SourceSpan span;
};

enum class SensorKind { Periodic, EventDriven, RequestBased };

std::string to_string(SensorKind k);

struct AccessKey {
  std::string name;
  FieldType type = FieldType::String;
};

struct SensorDecl {
  std::string name;
  SensorKind kind = SensorKind::Periodic;
  EventDecl generates;
  std::int64_t samplePeriodMs = 0;  // Periodic: d
  std::int64_t durationMs = 0;      // Periodic: k
  ExprPtr condition;                // EventDriven only
  AccessKey accessKey;              // RequestBased only
  SourceSpan span;
};

struct ActionDecl {
  std::string name;
  std::vector<FieldDecl> params;
};

struct ActuatorDecl {
  std::string name;
  std::vector<ActionDecl> actions;
  SourceSpan span;

  const ActionDecl* find_action(const std::string& name) const;
};

struct StorageDecl {
  std::string name;
  EventDecl generates;  // response event
  AccessKey accessKey;
  SourceSpan span;
};

struct DomainSpec {
  std::vector<RecordTypeDecl> records;
  std::vector<TagDecl> tags;
  std::vector<SensorDecl> sensors;
  std::vector<ActuatorDecl> actuators;
  std::vector<StorageDecl> storages;

  const RecordTypeDecl* find_record(const std::string& name) const;
  const SensorDecl* find_sensor(const std::string& name) const;
  const TagDecl* find_tag(const std::string& name) const;
  const ActuatorDecl* find_actuator(const std::string& name) const;
  const StorageDecl* find_storage(const std::string& name) const;
  bool has_resource(const std::string& name) const;
};

enum class ConsumeScope { SameLocation, Global };

struct ConsumeDecl {
  std::string event;
  ConsumeScope scope = ConsumeScope::SameLocation;
};

enum class ComputeOp { AvgBySample, SumBySample, CountBySample };

std::string to_string(ComputeOp op);

struct ComputeSpec {
  ComputeOp op = ComputeOp::AvgBySample;
  int windowSize = 1;
  std::string field;
};

// One bound command argument: either a field of a consumed event or a
// literal constant.
struct ArgBinding {
  std::string param;
  std::optional<std::string> field;
  std::optional<Value> literal;
};

struct CommandDecl {
  std::string action;
  std::string actuator;
  std::vector<ArgBinding> args;
};

enum class ServiceKind { Common, Custom };

struct ServiceDecl {
  std::string name;
  ServiceKind kind = ServiceKind::Custom;
  std::vector<ConsumeDecl> consumes;
  std::optional<ComputeSpec> computes;  // Common only
  std::vector<std::string> requests;    // storage / request-based sensor names
  std::vector<EventDecl> generates;
  std::vector<CommandDecl> commands;
  SourceSpan span;

  bool generates_event(const std::string& event) const;
};

struct ArchitectureSpec {
  std::vector<ServiceDecl> services;

  const ServiceDecl* find_service(const std::string& name) const;
};

struct InteractorDecl {
  std::string name;
  EventDecl payload;
  SourceSpan span;
};

struct UserInteractionSpec {
  std::vector<RecordTypeDecl> records;
  std::vector<InteractorDecl> interactors;

  const InteractorDecl* find_interactor(const std::string& name) const;
  const RecordTypeDecl* find_record(const std::string& name) const;
};

struct DeviceDecl {
  std::string name;
  std::string location;                // slash-separated region path
  std::vector<std::string> resources;  // drivers, pinned services, interactors
  std::string platform;                // empty when not compute-eligible
  std::string protocol;
  std::optional<std::string> database;
  SourceSpan span;
};

struct DeploymentSpec {
  std::vector<DeviceDecl> devices;

  const DeviceDecl* find_device(const std::string& name) const;
};

// Every tag, sensor, or service whose generates list contains `eventName`.
std::vector<std::string> event_producers(const DomainSpec& domain, const ArchitectureSpec& arch,
                                         const std::string& eventName);

struct ActionSignatureError {
  enum class Kind { UnknownActuator, UnknownAction } kind;
  std::string message;
};

// Declared parameter list of actuator.action, or why it does not resolve.
std::variant<std::vector<FieldDecl>, ActionSignatureError> action_signature(
    const DomainSpec& domain, const std::string& actuator, const std::string& action);

// Structural equality, ignoring source spans. Used by round-trip and
// descriptor-reconstruction tests.
bool same_structure(const RecordTypeDecl& a, const RecordTypeDecl& b);
bool same_structure(const ServiceDecl& a, const ServiceDecl& b);
bool same_structure(const DomainSpec& a, const DomainSpec& b);
bool same_structure(const ArchitectureSpec& a, const ArchitectureSpec& b);
bool same_structure(const UserInteractionSpec& a, const UserInteractionSpec& b);
bool same_structure(const DeploymentSpec& a, const DeploymentSpec& b);

}  // namespace iotforge
