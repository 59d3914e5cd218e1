#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotforge/sim/trace.hpp"
#include "iotforge/validator.hpp"

namespace iotforge {

// The application directory is wrong in a way the user must fix before any
// parsing can start (missing mandatory spec, ambiguous files, unreadable
// paths). The CLI reports these as usage errors.
class LayoutError : public std::runtime_error {
 public:
  explicit LayoutError(const std::string& message) : std::runtime_error(message) {}
};

// An application directory holds one spec per language, a traces/ directory
// of JSONL sensor data and a seeds/ directory of storage contents:
//   <app>/
//     <name>.vocab.mydsl     mandatory
//     <name>.arch.mydsl      mandatory
//     <name>.deploy.mydsl    mandatory
//     <name>.ui.mydsl        optional
//     <name>.rules           optional
//     traces/*.jsonl         optional
//     seeds/<Resource>.json  optional
struct ProjectLayout {
  std::filesystem::path root;
  std::filesystem::path vocab;
  std::filesystem::path arch;
  std::filesystem::path deploy;
  std::filesystem::path ui;     // empty when absent
  std::filesystem::path rules;  // empty when absent
  std::vector<std::filesystem::path> traceFiles;          // sorted by filename
  std::map<std::string, std::filesystem::path> seedFiles; // resource -> file
};

ProjectLayout discover_layout(const std::filesystem::path& appDir);

struct LoadedProject {
  Project project;
  Diagnostics diags;  // parse diagnostics from all files, sorted
};

LoadedProject load_project(const ProjectLayout& layout);
SensorTraces load_traces(const ProjectLayout& layout);
StorageSeeds load_seeds(const ProjectLayout& layout);

std::string read_text_file(const std::filesystem::path& path);  // throws LayoutError

}  // namespace iotforge
