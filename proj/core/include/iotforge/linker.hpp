#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iotforge/codegen.hpp"
#include "iotforge/mapper.hpp"
#include "iotforge/validator.hpp"

namespace iotforge {

// One deployable component: its name and the parsed descriptor that the
// generation step produced for it.
struct PackagedItem {
  std::string name;
  nlohmann::json descriptor;

  friend bool operator==(const PackagedItem&, const PackagedItem&) = default;
};

// Record types are embedded whole so a package is self-contained: the runtime
// never needs the source specs to interpret payloads.
struct DeviceManifest {
  std::string deviceName;
  std::string location;
  std::string platform;
  std::string protocol;
  std::string database;  // empty when the device has none
  std::vector<RecordTypeDecl> recordTypes;
};

struct DevicePackage {
  DeviceManifest manifest;
  std::vector<PackagedItem> services;  // name-sorted
  std::vector<PackagedItem> drivers;   // name-sorted
  std::vector<PackagedItem> sinks;     // name-sorted
  std::map<std::string, std::string> rules;  // service name -> verbatim rules block
};

class LinkerError : public std::runtime_error {
 public:
  enum class Kind {
    MissingDescriptor,
    PlanSpecMismatch,
  };

  LinkerError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

nlohmann::json manifest_to_json(const DeviceManifest& manifest);
DeviceManifest manifest_from_json(const nlohmann::json& j);  // throws BadDescriptor

// Partitions the generated descriptors across devices according to the plan.
// Every component in the project must be assigned, every assignment must name
// a known component and device, and every assigned component must have a
// descriptor among the artifacts.
std::vector<DevicePackage> link(const Project& project, const MappingPlan& plan,
                                const std::vector<GeneratedArtifact>& artifacts);

// Writes <outDir>/<device>/manifest.json plus services/, drivers/, sinks/ and
// rules/ subtrees. Output bytes depend only on the packages' content.
void write_packages(const std::vector<DevicePackage>& packages,
                    const std::filesystem::path& outDir);

}  // namespace iotforge
