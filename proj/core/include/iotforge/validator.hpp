#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotforge/diagnostics.hpp"
#include "iotforge/rules.hpp"
#include "iotforge/spec_model.hpp"

namespace iotforge {

struct Project {
  DomainSpec domain;
  ArchitectureSpec arch;
  std::optional<UserInteractionSpec> ui;
  DeploymentSpec deploy;
  LogicRuleSet rules;
};

// Cross-spec consistency checks. Error codes:
//   V1  consumed event has no producer
//   V2  request target unresolvable (arch) or undeclared (rules)
//   V3  command does not match the actuator's action signature
//   V4  deployment resource name matches nothing
//   V5  notify interactor not declared in the ui spec
//   V6  rule guard/assignment/argument/key type error
//   V7  Common service's COMPUTE field missing or non-numeric
//   V8  driver resource placed on no device
//   V9  device hosting a storage lacks a database
//   V10 driver resource placed on more than one device
//   V11 one event name generated with two different payload types
//   V12 rules/architecture mismatch (unknown service, trigger not consumed,
//       response trigger without a matching request, undeclared emit/command)
//   UnknownRecordType  payload type resolving to no record declaration
// Warnings: UnconsumedEvent, NoConsumes, InertService.
Diagnostics validate_project(const Project& p);

enum class EdgeKind { Event, Request, Command, Notify };

struct DataflowEdge {
  EdgeKind kind = EdgeKind::Event;
  std::string from;
  std::string to;
  std::string label;  // event name, action name, or response event

  bool operator==(const DataflowEdge&) const = default;
};

struct DataflowGraph {
  std::vector<std::string> nodes;  // declaration order: resources, services, interactors
  std::vector<DataflowEdge> edges;
};

class InvalidProject : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requires a project that validates without Errors; throws InvalidProject
// otherwise.
DataflowGraph dataflow_graph(const Project& p);

}  // namespace iotforge
