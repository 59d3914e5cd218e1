#include "iotforge/mapper.hpp"

#include <algorithm>

namespace iotforge {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

StrategyRegistry::StrategyRegistry() {
  strategies_.emplace_back("random", [](const MappingInputs& in) {
    std::map<std::string, std::string> out;
    SplitMix64 rng(in.seed);
    for (const auto& name : in.unpinned) {
      out[name] = in.eligibleDevices[rng.next() % in.eligibleDevices.size()];
    }
    return out;
  });
}

void StrategyRegistry::register_strategy(const std::string& name, MappingStrategy strategy) {
  for (const auto& [existing, fn] : strategies_) {
    if (existing == name) {
      throw MapperError(MapperError::Kind::DuplicateStrategy,
                        "mapping strategy '" + name + "' is already registered");
    }
  }
  strategies_.emplace_back(name, std::move(strategy));
}

const MappingStrategy& StrategyRegistry::get(const std::string& name) const {
  for (const auto& [existing, fn] : strategies_) {
    if (existing == name) return fn;
  }
  throw MapperError(MapperError::Kind::UnknownStrategy,
                    "unknown mapping strategy '" + name + "'");
}

std::vector<std::string> StrategyRegistry::list_strategies() const {
  std::vector<std::string> names;
  for (const auto& [name, fn] : strategies_) names.push_back(name);
  return names;
}

MappingPlan map_project(const Project& project, std::uint64_t seed,
                        const std::string& strategyName, const StrategyRegistry& registry) {
  const MappingStrategy& strategy = registry.get(strategyName);

  MappingPlan plan;
  plan.seed = seed;
  plan.strategy = strategyName;

  // Deployment resource lists pin components verbatim. Drivers always come
  // from here (the validator guarantees each has exactly one home).
  std::map<std::string, std::string> pins;
  for (const auto& dev : project.deploy.devices) {
    for (const auto& res : dev.resources) {
      auto [it, inserted] = pins.emplace(res, dev.name);
      if (!inserted && it->second != dev.name) {
        if (project.arch.find_service(res)) {
          throw MapperError(MapperError::Kind::ConflictingPin,
                            "service '" + res + "' is pinned to both '" + it->second +
                                "' and '" + dev.name + "'");
        }
        // conflicting driver placement is a validation error, keep the first
      }
    }
  }

  for (const auto& dev : project.deploy.devices) {
    for (const auto& res : dev.resources) {
      if (project.domain.has_resource(res)) plan.assignments[res] = pins[res];
    }
  }

  if (project.ui) {
    for (const auto& in : project.ui->interactors) {
      auto it = pins.find(in.name);
      if (it == pins.end()) {
        throw MapperError(MapperError::Kind::UnpinnedInteractor,
                          "interactor '" + in.name +
                              "' is not placed on any device; add it to a device's resources");
      }
      plan.assignments[in.name] = it->second;
    }
  }

  MappingInputs inputs;
  inputs.seed = seed;
  for (const auto& svc : project.arch.services) {
    auto it = pins.find(svc.name);
    if (it != pins.end()) {
      plan.assignments[svc.name] = it->second;
    } else {
      inputs.unpinned.push_back(svc.name);
    }
  }
  std::sort(inputs.unpinned.begin(), inputs.unpinned.end());

  for (const auto& dev : project.deploy.devices) {
    if (!dev.platform.empty()) inputs.eligibleDevices.push_back(dev.name);
  }
  std::sort(inputs.eligibleDevices.begin(), inputs.eligibleDevices.end());

  if (!inputs.unpinned.empty()) {
    if (inputs.eligibleDevices.empty()) {
      throw MapperError(MapperError::Kind::NoEligibleDevice,
                        "no device declares a platform; cannot place service '" +
                            inputs.unpinned.front() + "'");
    }
    for (auto& [name, device] : strategy(inputs)) {
      plan.assignments[name] = device;
    }
  }

  return plan;
}

MappingPlan map_project(const Project& project, std::uint64_t seed) {
  static const StrategyRegistry registry;
  return map_project(project, seed, "random", registry);
}

nlohmann::json plan_to_json(const MappingPlan& plan) {
  nlohmann::json assignments = nlohmann::json::object();
  for (const auto& [name, device] : plan.assignments) assignments[name] = device;
  return nlohmann::json{
      {"assignments", std::move(assignments)}, {"seed", plan.seed}, {"strategy", plan.strategy}};
}

MappingPlan plan_from_json(const nlohmann::json& j) {
  try {
    MappingPlan plan;
    plan.seed = j.at("seed").get<std::uint64_t>();
    plan.strategy = j.at("strategy").get<std::string>();
    for (const auto& [name, device] : j.at("assignments").items()) {
      if (!device.is_string()) {
        throw MapperError(MapperError::Kind::BadPlan,
                          "assignment for '" + name + "' must be a device name");
      }
      plan.assignments[name] = device.get<std::string>();
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw MapperError(MapperError::Kind::BadPlan,
                      std::string("malformed mapping plan: ") + e.what());
  }
}

}  // namespace iotforge
