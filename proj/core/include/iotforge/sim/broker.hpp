#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iotforge/expr.hpp"
#include "iotforge/sim/runlog.hpp"

namespace iotforge {

class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& message) : std::runtime_error(message) {}
};

// Transport latencies, in virtual milliseconds.
inline constexpr std::int64_t kDeliverLatencyMs = 1;
inline constexpr std::int64_t kResponseLatencyMs = 5;
inline constexpr std::int64_t kCommandLatencyMs = 1;
inline constexpr std::int64_t kNotifyLatencyMs = 1;

using Payload = std::map<std::string, Value>;

// Discrete-event loop over virtual time. Tasks run in (time, insertion)
// order; the clock never moves backwards and wall time plays no part.
class VirtualScheduler {
 public:
  void schedule_at(std::int64_t t, std::function<void()> fn);
  void run_until(std::int64_t until);
  std::int64_t now() const { return now_; }

 private:
  struct Task {
    std::int64_t t;
    std::int64_t seq;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Task& a, const Task& b) const {
      if (a.t != b.t) return a.t > b.t;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Task, std::vector<Task>, Later> queue_;
  std::int64_t nextSeq_ = 0;
  std::int64_t now_ = 0;
};

// Message fabric: pub/sub with location scoping, commands, request/response
// and user notifications. Every interaction is appended to the run log by the
// supplied logger.
class Broker {
 public:
  using Logger = std::function<void(LogKind, nlohmann::json fields)>;
  using DeliverHandler = std::function<void(const std::string& event, const Payload&)>;
  using CommandHandler =
      std::function<void(const std::string& action, const Payload& args, const std::string& sender)>;
  // found + payload; payload ignored when not found
  using Responder = std::function<std::pair<bool, Payload>(const Value& key)>;
  using ResponseHandler = std::function<void(bool found, const Payload&)>;

  Broker(VirtualScheduler& scheduler, Logger logger)
      : scheduler_(scheduler), logger_(std::move(logger)) {}

  // Duplicate (event, subscriber) pairs collapse to the first registration.
  // Delivery fan-out follows registration order.
  void subscribe(const std::string& event, const std::string& subscriber,
                 const std::string& location, bool global, DeliverHandler handler);

  void publish(const std::string& event, const std::string& publisher,
               const std::string& location, const Payload& payload);

  void register_actuator(const std::string& name, CommandHandler handler);
  void send_command(const std::string& actuator, const std::string& action, const Payload& args,
                    const std::string& sender);

  void register_responder(const std::string& name, Responder responder);
  void send_request(const std::string& target, const Value& key, const std::string& requester,
                    ResponseHandler onResponse);

  void register_sink(const std::string& name);
  void notify(const std::string& interactor, const std::string& event, const Payload& payload,
              const std::string& sender);

 private:
  struct Subscription {
    std::string subscriber;
    std::string location;
    bool global = false;
    DeliverHandler handler;
  };

  VirtualScheduler& scheduler_;
  Logger logger_;
  std::map<std::string, std::vector<Subscription>> subscriptions_;
  std::map<std::string, CommandHandler> actuators_;
  std::map<std::string, Responder> responders_;
  std::map<std::string, bool> sinks_;
  std::int64_t nextCorrelationId_ = 1;
};

nlohmann::json payload_to_json(const Payload& payload);

}  // namespace iotforge
