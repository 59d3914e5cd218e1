#include "iotforge/linker.hpp"

#include <fstream>
#include <unordered_map>

#include "iotforge/json_io.hpp"

namespace iotforge {

nlohmann::json manifest_to_json(const DeviceManifest& manifest) {
  nlohmann::json j;
  j["deviceName"] = manifest.deviceName;
  j["location"] = manifest.location;
  j["platform"] = manifest.platform;
  j["protocol"] = manifest.protocol;
  if (!manifest.database.empty()) j["database"] = manifest.database;
  j["recordTypes"] = nlohmann::json::array();
  for (const auto& rec : manifest.recordTypes) {
    j["recordTypes"].push_back(record_type_to_json(rec));
  }
  return j;
}

DeviceManifest manifest_from_json(const nlohmann::json& j) {
  try {
    DeviceManifest m;
    m.deviceName = j.at("deviceName").get<std::string>();
    m.location = j.at("location").get<std::string>();
    m.platform = j.at("platform").get<std::string>();
    m.protocol = j.at("protocol").get<std::string>();
    if (j.contains("database")) m.database = j.at("database").get<std::string>();
    for (const auto& rec : j.at("recordTypes")) {
      m.recordTypes.push_back(record_type_from_json(rec));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw BadDescriptor(std::string("malformed device manifest: ") + e.what());
  }
}

namespace {

enum class ComponentKind { Driver, Service, Sink };

}  // namespace

std::vector<DevicePackage> link(const Project& project, const MappingPlan& plan,
                                const std::vector<GeneratedArtifact>& artifacts) {
  std::unordered_map<std::string, const GeneratedArtifact*> byPath;
  for (const auto& a : artifacts) byPath[a.relativePath] = &a;

  auto classify = [&](const std::string& name) -> std::optional<ComponentKind> {
    if (project.domain.has_resource(name)) return ComponentKind::Driver;
    if (project.arch.find_service(name)) return ComponentKind::Service;
    if (project.ui && project.ui->find_interactor(name)) return ComponentKind::Sink;
    return std::nullopt;
  };

  auto require_assigned = [&](const std::string& name) {
    if (!plan.assignments.count(name)) {
      throw LinkerError(LinkerError::Kind::PlanSpecMismatch,
                        "plan does not assign '" + name + "' to any device");
    }
  };
  for (const auto& t : project.domain.tags) require_assigned(t.name);
  for (const auto& s : project.domain.sensors) require_assigned(s.name);
  for (const auto& a : project.domain.actuators) require_assigned(a.name);
  for (const auto& st : project.domain.storages) require_assigned(st.name);
  for (const auto& svc : project.arch.services) require_assigned(svc.name);
  if (project.ui) {
    for (const auto& in : project.ui->interactors) require_assigned(in.name);
  }

  std::vector<DevicePackage> packages;
  std::unordered_map<std::string, size_t> packageIndex;
  std::vector<RecordTypeDecl> allRecords = project.domain.records;
  if (project.ui) {
    allRecords.insert(allRecords.end(), project.ui->records.begin(), project.ui->records.end());
  }
  for (const auto& dev : project.deploy.devices) {
    DevicePackage pkg;
    pkg.manifest.deviceName = dev.name;
    pkg.manifest.location = dev.location;
    pkg.manifest.platform = dev.platform;
    pkg.manifest.protocol = dev.protocol;
    pkg.manifest.database = dev.database.value_or("");
    pkg.manifest.recordTypes = allRecords;
    packageIndex[dev.name] = packages.size();
    packages.push_back(std::move(pkg));
  }

  auto fetch = [&](const std::string& path) -> const GeneratedArtifact& {
    auto it = byPath.find(path);
    if (it == byPath.end()) {
      throw LinkerError(LinkerError::Kind::MissingDescriptor,
                        "no generated descriptor at '" + path +
                            "'; run the build step with the sim-descriptor plugin first");
    }
    return *it->second;
  };

  for (const auto& [name, device] : plan.assignments) {
    auto kind = classify(name);
    if (!kind) {
      throw LinkerError(LinkerError::Kind::PlanSpecMismatch,
                        "plan assigns unknown component '" + name + "'");
    }
    auto devIt = packageIndex.find(device);
    if (devIt == packageIndex.end()) {
      throw LinkerError(LinkerError::Kind::PlanSpecMismatch,
                        "plan assigns '" + name + "' to unknown device '" + device + "'");
    }
    DevicePackage& pkg = packages[devIt->second];
    switch (*kind) {
      case ComponentKind::Driver:
        pkg.drivers.push_back(
            {name, nlohmann::json::parse(fetch("drivers/" + name + ".json").content)});
        break;
      case ComponentKind::Service: {
        pkg.services.push_back(
            {name, nlohmann::json::parse(fetch("services/" + name + ".json").content)});
        if (const auto* block = project.rules.find_service(name)) {
          pkg.rules[name] = block->sourceText;
        }
        break;
      }
      case ComponentKind::Sink:
        pkg.sinks.push_back(
            {name, nlohmann::json::parse(fetch("sinks/" + name + ".json").content)});
        break;
    }
  }

  return packages;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace

void write_packages(const std::vector<DevicePackage>& packages,
                    const std::filesystem::path& outDir) {
  for (const auto& pkg : packages) {
    auto root = outDir / pkg.manifest.deviceName;
    std::filesystem::create_directories(root);
    write_file(root / "manifest.json", canonical_json(manifest_to_json(pkg.manifest)));
    if (!pkg.services.empty()) {
      std::filesystem::create_directories(root / "services");
      for (const auto& item : pkg.services) {
        write_file(root / "services" / (item.name + ".json"), canonical_json(item.descriptor));
      }
    }
    if (!pkg.drivers.empty()) {
      std::filesystem::create_directories(root / "drivers");
      for (const auto& item : pkg.drivers) {
        write_file(root / "drivers" / (item.name + ".json"), canonical_json(item.descriptor));
      }
    }
    if (!pkg.sinks.empty()) {
      std::filesystem::create_directories(root / "sinks");
      for (const auto& item : pkg.sinks) {
        write_file(root / "sinks" / (item.name + ".json"), canonical_json(item.descriptor));
      }
    }
    if (!pkg.rules.empty()) {
      std::filesystem::create_directories(root / "rules");
      for (const auto& [service, text] : pkg.rules) {
        std::string body = text;
        if (body.empty() || body.back() != '\n') body += '\n';
        write_file(root / "rules" / (service + ".rules"), body);
      }
    }
  }
}

}  // namespace iotforge
