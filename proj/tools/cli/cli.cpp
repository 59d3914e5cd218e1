#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#ifndef _WIN32
#include <unistd.h>
#endif

#include <CLI11.hpp>

#include "iotforge/codegen.hpp"
#include "iotforge/json_io.hpp"
#include "iotforge/layout.hpp"
#include "iotforge/linker.hpp"
#include "iotforge/mapper.hpp"
#include "iotforge/sim/engine.hpp"
#include "iotforge/validator.hpp"

namespace iotforge::cli {

namespace {

bool use_color(const std::ostream& err) {
#ifndef _WIN32
  if (&err != &std::cerr) return false;
  if (std::getenv("IOTFORGE_NO_COLOR")) return false;
  return isatty(STDERR_FILENO) != 0;
#else
  (void)err;
  return false;
#endif
}

struct CheckedProject {
  ProjectLayout layout;
  Project project;
  Diagnostics diags;
};

CheckedProject check_project(const std::string& appDir) {
  CheckedProject checked;
  checked.layout = discover_layout(appDir);
  auto loaded = load_project(checked.layout);
  checked.project = std::move(loaded.project);
  checked.diags = std::move(loaded.diags);
  // Validation works on a structurally sound model only; parse errors would
  // just echo as spurious cross-reference failures.
  if (!has_errors(checked.diags)) {
    Diagnostics v = validate_project(checked.project);
    checked.diags.insert(checked.diags.end(), v.begin(), v.end());
    sort_diagnostics(checked.diags);
  }
  return checked;
}

nlohmann::json diags_to_json(const Diagnostics& diags) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : diags) {
    arr.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                   {"code", d.code},
                   {"message", d.message},
                   {"file", d.span.file},
                   {"line", d.span.line},
                   {"column", d.span.column}});
  }
  return arr;
}

size_t count_severity(const Diagnostics& diags, Severity s) {
  return static_cast<size_t>(
      std::count_if(diags.begin(), diags.end(),
                    [s](const Diagnostic& d) { return d.severity == s; }));
}

std::vector<GeneratedArtifact> generate_all(const Project& project, const Plugin& plugin) {
  std::vector<GeneratedArtifact> artifacts = generate_domain_framework(project.domain, plugin);
  auto arch =
      generate_architecture_framework(project.arch, project.domain, plugin, &project.rules);
  artifacts.insert(artifacts.end(), std::make_move_iterator(arch.begin()),
                   std::make_move_iterator(arch.end()));
  if (project.ui) {
    auto ui = generate_ui_framework(*project.ui, plugin);
    artifacts.insert(artifacts.end(), std::make_move_iterator(ui.begin()),
                     std::make_move_iterator(ui.end()));
  }
  return artifacts;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream outFile(path, std::ios::binary);
  if (!outFile) throw std::runtime_error("cannot write " + path.string());
  outFile.write(content.data(), static_cast<std::streamsize>(content.size()));
}

void write_artifacts(const std::vector<GeneratedArtifact>& artifacts,
                     const std::filesystem::path& outDir) {
  for (const auto& a : artifacts) {
    write_file(outDir / a.relativePath, a.content);
  }
}

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  std::string format = "text";

  bool json() const { return format == "json"; }
};

// Prints diagnostics (text on stderr; the json object goes to stdout at the
// end of the command). Returns false when there are errors.
bool report_diagnostics(Ctx& ctx, const Diagnostics& diags, nlohmann::json* summary) {
  if (ctx.json()) {
    if (summary) (*summary)["diagnostics"] = diags_to_json(diags);
  } else if (!diags.empty()) {
    ctx.err << render_diagnostics(diags, use_color(ctx.err));
  }
  return !has_errors(diags);
}

int cmd_check(Ctx& ctx, const std::string& appDir) {
  auto checked = check_project(appDir);
  nlohmann::json summary;
  bool ok = report_diagnostics(ctx, checked.diags, &summary);
  size_t errors = count_severity(checked.diags, Severity::Error);
  size_t warnings = count_severity(checked.diags, Severity::Warning);
  if (ctx.json()) {
    summary["errors"] = errors;
    summary["warnings"] = warnings;
    summary["ok"] = ok;
    ctx.out << canonical_json(summary);
  } else {
    ctx.out << (ok ? "ok" : "failed") << " (" << errors << " errors, " << warnings
            << " warnings)\n";
  }
  return ok ? 0 : 1;
}

int cmd_build(Ctx& ctx, const std::string& appDir, const std::string& pluginId,
              const std::string& outDir) {
  auto checked = check_project(appDir);
  if (!report_diagnostics(ctx, checked.diags, nullptr)) return 1;
  PluginRegistry registry;
  const Plugin& plugin = registry.get(pluginId);
  auto artifacts = generate_all(checked.project, plugin);
  write_artifacts(artifacts, outDir);
  if (ctx.json()) {
    ctx.out << canonical_json({{"artifacts", artifacts.size()}, {"out", outDir}});
  } else {
    ctx.out << "wrote " << artifacts.size() << " artifacts to " << outDir << "\n";
  }
  return 0;
}

int cmd_map(Ctx& ctx, const std::string& appDir, std::uint64_t seed,
            const std::string& strategy, const std::string& outFile) {
  auto checked = check_project(appDir);
  if (!report_diagnostics(ctx, checked.diags, nullptr)) return 1;
  StrategyRegistry registry;
  MappingPlan plan = map_project(checked.project, seed, strategy, registry);
  std::string text = canonical_json(plan_to_json(plan));
  if (outFile.empty()) {
    ctx.out << text;
  } else {
    write_file(outFile, text);
    if (ctx.json()) {
      ctx.out << canonical_json({{"assignments", plan.assignments.size()}, {"out", outFile}});
    } else {
      ctx.out << "wrote plan with " << plan.assignments.size() << " assignments to " << outFile
              << "\n";
    }
  }
  return 0;
}

int cmd_link(Ctx& ctx, const std::string& appDir, const std::string& planFile,
             const std::string& outDir) {
  auto checked = check_project(appDir);
  if (!report_diagnostics(ctx, checked.diags, nullptr)) return 1;
  nlohmann::json planJson = nlohmann::json::parse(read_text_file(planFile), nullptr, false);
  if (planJson.is_discarded()) {
    throw MapperError(MapperError::Kind::BadPlan, planFile + " is not valid JSON");
  }
  MappingPlan plan = plan_from_json(planJson);
  PluginRegistry registry;
  auto artifacts = generate_all(checked.project, registry.get("sim-descriptor"));
  auto packages = link(checked.project, plan, artifacts);
  write_packages(packages, outDir);
  if (ctx.json()) {
    ctx.out << canonical_json({{"devices", packages.size()}, {"out", outDir}});
  } else {
    ctx.out << "wrote " << packages.size() << " device packages to " << outDir << "\n";
  }
  return 0;
}

struct RunOutcome {
  RunResult result;
  nlohmann::json summary;
};

RunOutcome run_project(Ctx& ctx, const CheckedProject& checked, std::uint64_t seed,
                       std::int64_t until) {
  PluginRegistry plugins;
  auto artifacts = generate_all(checked.project, plugins.get("sim-descriptor"));
  MappingPlan plan = map_project(checked.project, seed);
  auto packages = link(checked.project, plan, artifacts);
  SensorTraces traces = load_traces(checked.layout);
  StorageSeeds seeds = load_seeds(checked.layout);

  RunOutcome outcome;
  outcome.result = run_simulation(packages, traces, seeds, until);

  size_t publishes = 0, delivers = 0, commands = 0, notifies = 0;
  for (const auto& e : outcome.result.log) {
    switch (e.kind) {
      case LogKind::Publish: ++publishes; break;
      case LogKind::Deliver: ++delivers; break;
      case LogKind::Command: ++commands; break;
      case LogKind::Notify: ++notifies; break;
      default: break;
    }
  }
  outcome.summary = {{"publishes", publishes},
                     {"delivers", delivers},
                     {"commands", commands},
                     {"notifies", notifies},
                     {"ruleErrors", outcome.result.ruleErrors.size()},
                     {"entries", outcome.result.log.size()}};

  for (const auto& re : outcome.result.ruleErrors) {
    ctx.err << "rule error at t=" << re.t << "ms in " << re.service << ": " << re.message
            << "\n";
  }
  return outcome;
}

void print_run_summary(Ctx& ctx, const nlohmann::json& summary) {
  if (ctx.json()) {
    ctx.out << canonical_json(summary);
    return;
  }
  auto row = [&](const char* label, const char* key) {
    ctx.out << "  " << std::left << std::setw(12) << label
            << summary.at(key).get<std::size_t>() << "\n";
  };
  ctx.out << "run summary:\n";
  row("publishes", "publishes");
  row("delivers", "delivers");
  row("commands", "commands");
  row("notifies", "notifies");
  row("rule errors", "ruleErrors");
}

int cmd_run(Ctx& ctx, const std::string& appDir, std::uint64_t seed, std::int64_t until,
            const std::string& logFile) {
  auto checked = check_project(appDir);
  if (!report_diagnostics(ctx, checked.diags, nullptr)) return 1;
  RunOutcome outcome = run_project(ctx, checked, seed, until);
  if (!logFile.empty()) write_file(logFile, runlog_to_jsonl(outcome.result.log));
  print_run_summary(ctx, outcome.summary);
  return 0;
}

int cmd_pipeline(Ctx& ctx, const std::string& appDir, std::uint64_t seed, std::int64_t until,
                 const std::string& outDir) {
  auto step = [&](const std::string& line) {
    if (!ctx.json()) ctx.out << line << "\n";
  };

  auto checked = check_project(appDir);
  if (!report_diagnostics(ctx, checked.diags, nullptr)) {
    step("check: failed");
    return 1;
  }
  step("check: ok");

  std::filesystem::path out(outDir);
  PluginRegistry plugins;
  size_t artifactCount = 0;
  std::vector<GeneratedArtifact> descriptors;
  for (const auto& id : plugins.list_plugins()) {
    auto artifacts = generate_all(checked.project, plugins.get(id));
    write_artifacts(artifacts, out / "gen" / id);
    artifactCount += artifacts.size();
    if (id == "sim-descriptor") descriptors = std::move(artifacts);
  }
  step("build: " + std::to_string(artifactCount) + " artifacts");

  MappingPlan plan = map_project(checked.project, seed);
  write_file(out / "plan.json", canonical_json(plan_to_json(plan)));
  step("map: " + std::to_string(plan.assignments.size()) + " assignments (seed " +
       std::to_string(seed) + ")");

  auto packages = link(checked.project, plan, descriptors);
  write_packages(packages, out / "packages");
  step("link: " + std::to_string(packages.size()) + " device packages");

  SensorTraces traces = load_traces(checked.layout);
  StorageSeeds seeds = load_seeds(checked.layout);
  RunResult result = run_simulation(packages, traces, seeds, until);
  write_file(out / "runlog.jsonl", runlog_to_jsonl(result.log));
  for (const auto& re : result.ruleErrors) {
    ctx.err << "rule error at t=" << re.t << "ms in " << re.service << ": " << re.message
            << "\n";
  }

  size_t publishes = 0, delivers = 0, commands = 0, notifies = 0;
  for (const auto& e : result.log) {
    switch (e.kind) {
      case LogKind::Publish: ++publishes; break;
      case LogKind::Deliver: ++delivers; break;
      case LogKind::Command: ++commands; break;
      case LogKind::Notify: ++notifies; break;
      default: break;
    }
  }
  nlohmann::json summary = {{"publishes", publishes},
                            {"delivers", delivers},
                            {"commands", commands},
                            {"notifies", notifies},
                            {"ruleErrors", result.ruleErrors.size()},
                            {"entries", result.log.size()}};
  if (ctx.json()) {
    ctx.out << canonical_json({{"out", outDir}, {"run", summary}});
  } else {
    step("run: " + std::to_string(result.log.size()) + " log entries");
    print_run_summary(ctx, summary);
  }
  return 0;
}

int cmd_plugins(Ctx& ctx) {
  PluginRegistry registry;
  if (ctx.json()) {
    ctx.out << canonical_json({{"plugins", registry.list_plugins()}});
  } else {
    for (const auto& id : registry.list_plugins()) ctx.out << id << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Ctx ctx{out, err};

  CLI::App app{"DSL toolchain and runtime simulator for distributed sense-compute-control apps"};
  app.name("iotforge");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", ctx.format, "Output format for results and diagnostics")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string appDir;
  std::string pluginId;
  std::string outPath;
  std::string planFile;
  std::string logFile;
  std::string strategy = "random";
  std::uint64_t seed = 0;
  std::int64_t until = 360000;

  auto* check = app.add_subcommand("check", "Parse and validate an application directory");
  check->add_option("app", appDir, "Application directory")->required();

  auto* build = app.add_subcommand("build", "Generate frameworks with a code generation plugin");
  build->add_option("app", appDir, "Application directory")->required();
  build->add_option("--plugin", pluginId, "Code generation plugin id")->required();
  build->add_option("--out", outPath, "Output directory")->required();

  auto* map = app.add_subcommand("map", "Assign services to devices");
  map->add_option("app", appDir, "Application directory")->required();
  map->add_option("--seed", seed, "Random seed for the mapping strategy")->required();
  map->add_option("--strategy", strategy, "Mapping strategy")->capture_default_str();
  map->add_option("--out", outPath, "Plan file (stdout when omitted)");

  auto* link = app.add_subcommand("link", "Assemble per-device packages from a plan");
  link->add_option("app", appDir, "Application directory")->required();
  link->add_option("--plan", planFile, "Mapping plan file")->required();
  link->add_option("--out", outPath, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Simulate the application against its traces");
  run->add_option("app", appDir, "Application directory")->required();
  run->add_option("--seed", seed, "Mapping seed")->capture_default_str();
  run->add_option("--until", until, "Virtual end time in milliseconds")->capture_default_str();
  run->add_option("--log", logFile, "Write the run log (JSONL) here");

  auto* pipeline =
      app.add_subcommand("pipeline", "check, build, map, link and run in one step");
  pipeline->add_option("app", appDir, "Application directory")->required();
  pipeline->add_option("--seed", seed, "Mapping seed")->capture_default_str();
  pipeline->add_option("--until", until, "Virtual end time in milliseconds")
      ->capture_default_str();
  pipeline->add_option("--out", outPath, "Output directory")->required();

  auto* plugins = app.add_subcommand("plugins", "List available code generation plugins");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(ctx, appDir);
    if (build->parsed()) return cmd_build(ctx, appDir, pluginId, outPath);
    if (map->parsed()) return cmd_map(ctx, appDir, seed, strategy, outPath);
    if (link->parsed()) return cmd_link(ctx, appDir, planFile, outPath);
    if (run->parsed()) return cmd_run(ctx, appDir, seed, until, logFile);
    if (pipeline->parsed()) return cmd_pipeline(ctx, appDir, seed, until, outPath);
    if (plugins->parsed()) return cmd_plugins(ctx);
  } catch (const LayoutError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace iotforge::cli
