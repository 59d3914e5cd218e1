#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "iotforge/codegen.hpp"
#include "iotforge/layout.hpp"
#include "iotforge/linker.hpp"
#include "iotforge/mapper.hpp"
#include "iotforge/parsers.hpp"
#include "iotforge/validator.hpp"

namespace iotforge::testing {

inline std::filesystem::path apps_dir() { return std::filesystem::path(IOTFORGE_APPS_DIR); }

struct LoadedApp {
  ProjectLayout layout;
  Project project;
  Diagnostics diags;  // parse + validation, sorted
};

inline LoadedApp load_app(const std::string& name) {
  LoadedApp app;
  app.layout = discover_layout(apps_dir() / name);
  LoadedProject loaded = load_project(app.layout);
  app.project = std::move(loaded.project);
  app.diags = std::move(loaded.diags);
  if (!has_errors(app.diags)) {
    Diagnostics vdiags = validate_project(app.project);
    app.diags.insert(app.diags.end(), vdiags.begin(), vdiags.end());
    sort_diagnostics(app.diags);
  }
  return app;
}

// Inline source fragments for tests that build a project from strings. Empty
// vocab/arch/deploy fall back to a minimal well-formed spec so a test can
// focus on one file.
struct Sources {
  std::string vocab;
  std::string arch;
  std::string ui;     // empty means absent
  std::string deploy;
  std::string rules;  // empty means absent
};

inline const char* kMinimalVocab = R"(resources {
  structs {
    TempStruct {
      tempValue: double;
    }
  }
  periodicSensors {
    TemperatureSensor {
      generate tempMeasurement: TempStruct;
      sample period 1 for 360;
    }
  }
}
)";

inline const char* kMinimalArch = R"(computationalServices {
  Custom Watcher {
    consume tempMeasurement;
  }
}
)";

inline const char* kMinimalDeploy = R"(devices {
  Node {
    location: "home/room#1";
    resources: TemperatureSensor, Watcher;
    language-platform: nodejs;
    protocol: mqtt;
  }
}
)";

struct Parsed {
  Project project;
  Diagnostics parseDiags;
  Diagnostics validationDiags;
};

inline Parsed make_project(const Sources& src) {
  Parsed out;
  auto vocab = parse_domain(src.vocab.empty() ? kMinimalVocab : src.vocab, "app.vocab.mydsl");
  auto arch = parse_architecture(src.arch.empty() ? kMinimalArch : src.arch, "app.arch.mydsl");
  auto deploy =
      parse_deployment(src.deploy.empty() ? kMinimalDeploy : src.deploy, "app.deploy.mydsl");
  out.project.domain = std::move(vocab.value);
  out.project.arch = std::move(arch.value);
  out.project.deploy = std::move(deploy.value);
  auto collect = [&out](const Diagnostics& d) {
    out.parseDiags.insert(out.parseDiags.end(), d.begin(), d.end());
  };
  collect(vocab.diags);
  collect(arch.diags);
  collect(deploy.diags);
  if (!src.ui.empty()) {
    auto ui = parse_user_interaction(src.ui, "app.ui.mydsl");
    out.project.ui = std::move(ui.value);
    collect(ui.diags);
  }
  if (!src.rules.empty()) {
    auto rules = parse_logic_rules(src.rules, "app.rules");
    out.project.rules = std::move(rules.value);
    collect(rules.diags);
  }
  sort_diagnostics(out.parseDiags);
  if (!has_errors(out.parseDiags)) {
    out.validationDiags = validate_project(out.project);
  }
  return out;
}

// Validation diagnostics for inline sources; parse errors fail the calling
// test via ADD_FAILURE so broken fixtures are loud.
inline Diagnostics check_sources(const Sources& src) {
  Parsed parsed = make_project(src);
  if (has_errors(parsed.parseDiags)) {
    ADD_FAILURE() << "fixture has parse errors:\n" << render_diagnostics(parsed.parseDiags);
    return parsed.parseDiags;
  }
  return parsed.validationDiags;
}

inline int count_code(const Diagnostics& diags, const std::string& code) {
  return static_cast<int>(
      std::count_if(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; }));
}

inline bool has_code(const Diagnostics& diags, const std::string& code) {
  return count_code(diags, code) > 0;
}

inline int count_errors(const Diagnostics& diags) {
  return static_cast<int>(std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  }));
}

// Full in-memory packaging path: descriptors -> mapping -> per-device
// packages. Assumes a valid project.
inline std::vector<GeneratedArtifact> sim_descriptor_artifacts(const Project& project) {
  PluginRegistry registry;
  const Plugin& plugin = registry.get("sim-descriptor");
  std::vector<GeneratedArtifact> artifacts = plugin.domain_artifacts(project.domain);
  std::vector<GeneratedArtifact> archArtifacts =
      plugin.architecture_artifacts(project.arch, project.domain, &project.rules);
  artifacts.insert(artifacts.end(), archArtifacts.begin(), archArtifacts.end());
  if (project.ui) {
    std::vector<GeneratedArtifact> uiArtifacts = plugin.ui_artifacts(*project.ui);
    artifacts.insert(artifacts.end(), uiArtifacts.begin(), uiArtifacts.end());
  }
  return artifacts;
}

inline std::vector<DevicePackage> package_project(const Project& project, std::uint64_t seed) {
  MappingPlan plan = map_project(project, seed);
  return link(project, plan, sim_descriptor_artifacts(project));
}

}  // namespace iotforge::testing
