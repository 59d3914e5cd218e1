#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "iotforge/rules.hpp"
#include "iotforge/spec_model.hpp"

namespace iotforge {

enum class TargetKind { NeutralScaffold, SimDescriptor };

struct GeneratedArtifact {
  enum class Stage { DomainFramework, ArchitectureFramework, UIFramework };

  std::string relativePath;  // normalized, never contains ".." segments
  std::string content;
  Stage sourceStage = Stage::DomainFramework;
};

class Plugin {
 public:
  virtual ~Plugin() = default;
  virtual std::string id() const = 0;
  virtual TargetKind target_kind() const = 0;
  virtual std::vector<GeneratedArtifact> domain_artifacts(const DomainSpec& domain) const = 0;
  virtual std::vector<GeneratedArtifact> architecture_artifacts(
      const ArchitectureSpec& arch, const DomainSpec& domain, const LogicRuleSet* rules) const = 0;
  virtual std::vector<GeneratedArtifact> ui_artifacts(const UserInteractionSpec& ui) const = 0;
};

class DuplicatePlugin : public std::runtime_error {
 public:
  explicit DuplicatePlugin(const std::string& id)
      : std::runtime_error("plugin '" + id + "' is already registered") {}
};

class UnknownPlugin : public std::runtime_error {
 public:
  explicit UnknownPlugin(const std::string& id)
      : std::runtime_error("unknown plugin '" + id + "'") {}
};

// Ships with "neutral-scaffold" and "sim-descriptor"; custom plug-ins may be
// registered before generation starts.
class PluginRegistry {
 public:
  PluginRegistry();

  std::vector<std::string> list_plugins() const;  // registration order
  void register_plugin(std::unique_ptr<Plugin> plugin);
  const Plugin& get(const std::string& id) const;

 private:
  std::vector<std::unique_ptr<Plugin>> plugins_;
};

std::vector<GeneratedArtifact> generate_domain_framework(const DomainSpec& domain,
                                                         const Plugin& plugin);
std::vector<GeneratedArtifact> generate_architecture_framework(const ArchitectureSpec& arch,
                                                               const DomainSpec& domain,
                                                               const Plugin& plugin,
                                                               const LogicRuleSet* rules = nullptr);
std::vector<GeneratedArtifact> generate_ui_framework(const UserInteractionSpec& ui,
                                                     const Plugin& plugin);

// --- sim descriptors ---------------------------------------------------------
// The JSON twins of the model declarations. to/from pairs are lossless
// modulo source spans.

using DriverDecl = std::variant<TagDecl, SensorDecl, ActuatorDecl, StorageDecl>;

class BadDescriptor : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json service_descriptor(const ServiceDecl& svc, const ServiceRules* rules);
ServiceDecl service_from_descriptor(const nlohmann::json& j);

nlohmann::json driver_descriptor(const DriverDecl& driver);
DriverDecl driver_from_descriptor(const nlohmann::json& j);

nlohmann::json sink_descriptor(const InteractorDecl& interactor);
InteractorDecl sink_from_descriptor(const nlohmann::json& j);

nlohmann::json record_type_to_json(const RecordTypeDecl& rec);
RecordTypeDecl record_type_from_json(const nlohmann::json& j);

const std::string& driver_name(const DriverDecl& driver);

}  // namespace iotforge
