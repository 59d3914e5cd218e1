#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "iotforge/sim/trace.hpp"
#include "iotforge/validator.hpp"

namespace iotforge::testing {

// Structurally valid random project touching every language construct:
// records, tags, all three sensor kinds, actuators, storages, Common and
// Custom services, interactors, rules and devices. Formatting and reparsing
// it must reproduce the same structure, and validation reports no errors.
Project random_project(std::mt19937_64& rng);

struct ExpectedDeliver {
  std::int64_t t = 0;
  std::string event;
  std::string publisher;
  std::string subscriber;

  friend bool operator==(const ExpectedDeliver&, const ExpectedDeliver&) = default;
  friend bool operator<(const ExpectedDeliver& a, const ExpectedDeliver& b) {
    return std::tie(a.t, a.event, a.publisher, a.subscriber) <
           std::tie(b.t, b.event, b.publisher, b.subscriber);
  }
};

// Pub/sub layout with pinned locations plus the trace that drives it.
// `expected` is the cross join of publishes and matching subscriptions,
// computed straight from the declaration lists without touching the broker:
// a subscriber receives a publish iff it listens globally or its device
// shares the publisher's location.
struct DeliveryTopology {
  Project project;
  SensorTraces traces;
  std::vector<ExpectedDeliver> expected;  // sorted
  std::int64_t horizonMs = 0;             // past the last delivery
};

// At most 5 locations, 10 subscriptions and 50 publishes.
DeliveryTopology random_topology(std::mt19937_64& rng);

}  // namespace iotforge::testing
