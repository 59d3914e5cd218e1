#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "iotforge/validator.hpp"

namespace iotforge {

// Deterministic 64-bit generator (SplitMix64). Same seed, same stream, on
// every platform; this is what makes mapping plans reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// component name -> device name, for every service, driver and interactor.
struct MappingPlan {
  std::map<std::string, std::string> assignments;
  std::uint64_t seed = 0;
  std::string strategy = "random";

  friend bool operator==(const MappingPlan&, const MappingPlan&) = default;
};

class MapperError : public std::runtime_error {
 public:
  enum class Kind {
    NoEligibleDevice,
    ConflictingPin,
    UnpinnedInteractor,
    UnknownStrategy,
    DuplicateStrategy,
    BadPlan,
  };

  MapperError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A strategy sees only the names that still need a device, the devices that
// can host them, and the seed. Pinned placements never reach it.
struct MappingInputs {
  std::vector<std::string> unpinned;         // sorted service names
  std::vector<std::string> eligibleDevices;  // sorted names of devices with a platform
  std::uint64_t seed = 0;
};

using MappingStrategy =
    std::function<std::map<std::string, std::string>(const MappingInputs&)>;

class StrategyRegistry {
 public:
  StrategyRegistry();  // registers the built-in "random" strategy

  void register_strategy(const std::string& name, MappingStrategy strategy);
  const MappingStrategy& get(const std::string& name) const;
  std::vector<std::string> list_strategies() const;

 private:
  std::vector<std::pair<std::string, MappingStrategy>> strategies_;
};

MappingPlan map_project(const Project& project, std::uint64_t seed,
                        const std::string& strategyName, const StrategyRegistry& registry);
MappingPlan map_project(const Project& project, std::uint64_t seed);

nlohmann::json plan_to_json(const MappingPlan& plan);
MappingPlan plan_from_json(const nlohmann::json& j);  // throws MapperError(BadPlan)

}  // namespace iotforge
