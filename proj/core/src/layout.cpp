#include "iotforge/layout.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iotforge/parsers.hpp"

namespace iotforge {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LayoutError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

ProjectLayout discover_layout(const std::filesystem::path& appDir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(appDir, ec)) {
    throw LayoutError(appDir.string() + " is not a directory");
  }

  ProjectLayout layout;
  layout.root = appDir;

  struct Slot {
    const char* suffix;
    std::filesystem::path* target;
    bool mandatory;
  };
  Slot slots[] = {
      {".vocab.mydsl", &layout.vocab, true},
      {".arch.mydsl", &layout.arch, true},
      {".deploy.mydsl", &layout.deploy, true},
      {".ui.mydsl", &layout.ui, false},
      {".rules", &layout.rules, false},
  };

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(appDir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  for (const auto& file : files) {
    std::string name = file.filename().string();
    for (auto& slot : slots) {
      if (!ends_with(name, slot.suffix)) continue;
      if (!slot.target->empty()) {
        throw LayoutError("both " + slot.target->filename().string() + " and " + name +
                          " match *" + slot.suffix + " in " + appDir.string());
      }
      *slot.target = file;
      break;  // .ui.mydsl would otherwise also match no other suffix, but be explicit
    }
  }

  for (const auto& slot : slots) {
    if (slot.mandatory && slot.target->empty()) {
      throw LayoutError("no *" + std::string(slot.suffix) + " file in " + appDir.string());
    }
  }

  auto tracesDir = appDir / "traces";
  if (std::filesystem::is_directory(tracesDir, ec)) {
    for (const auto& entry : std::filesystem::directory_iterator(tracesDir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
        layout.traceFiles.push_back(entry.path());
      }
    }
    std::sort(layout.traceFiles.begin(), layout.traceFiles.end());
  }

  auto seedsDir = appDir / "seeds";
  if (std::filesystem::is_directory(seedsDir, ec)) {
    for (const auto& entry : std::filesystem::directory_iterator(seedsDir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        layout.seedFiles[entry.path().stem().string()] = entry.path();
      }
    }
  }

  return layout;
}

LoadedProject load_project(const ProjectLayout& layout) {
  LoadedProject loaded;
  auto merge = [&](Diagnostics diags) {
    loaded.diags.insert(loaded.diags.end(), diags.begin(), diags.end());
  };

  auto domain = parse_domain(read_text_file(layout.vocab), layout.vocab.filename().string());
  merge(domain.diags);
  loaded.project.domain = std::move(domain.value);

  auto arch = parse_architecture(read_text_file(layout.arch), layout.arch.filename().string());
  merge(arch.diags);
  loaded.project.arch = std::move(arch.value);

  auto deploy = parse_deployment(read_text_file(layout.deploy), layout.deploy.filename().string());
  merge(deploy.diags);
  loaded.project.deploy = std::move(deploy.value);

  if (!layout.ui.empty()) {
    auto ui = parse_user_interaction(read_text_file(layout.ui), layout.ui.filename().string());
    merge(ui.diags);
    loaded.project.ui = std::move(ui.value);
  }
  if (!layout.rules.empty()) {
    auto rules = parse_logic_rules(read_text_file(layout.rules), layout.rules.filename().string());
    merge(rules.diags);
    loaded.project.rules = std::move(rules.value);
  }

  sort_diagnostics(loaded.diags);
  return loaded;
}

SensorTraces load_traces(const ProjectLayout& layout) {
  SensorTraces traces;
  for (const auto& file : layout.traceFiles) {
    merge_trace_jsonl(traces, read_text_file(file), file.filename().string());
  }
  return traces;
}

StorageSeeds load_seeds(const ProjectLayout& layout) {
  StorageSeeds seeds;
  for (const auto& [resource, file] : layout.seedFiles) {
    seeds[resource] = parse_seed_json(read_text_file(file), file.filename().string());
  }
  return seeds;
}

}  // namespace iotforge
