#include "iotforge/sim/broker.hpp"

#include "iotforge/json_io.hpp"

namespace iotforge {

void VirtualScheduler::schedule_at(std::int64_t t, std::function<void()> fn) {
  queue_.push(Task{t, nextSeq_++, std::move(fn)});
}

void VirtualScheduler::run_until(std::int64_t until) {
  while (!queue_.empty()) {
    if (queue_.top().t > until) break;
    Task task = queue_.top();
    queue_.pop();
    now_ = task.t;
    task.fn();
  }
}

nlohmann::json payload_to_json(const Payload& payload) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, v] : payload) j[name] = value_to_json(v);
  return j;
}

void Broker::subscribe(const std::string& event, const std::string& subscriber,
                       const std::string& location, bool global, DeliverHandler handler) {
  auto& subs = subscriptions_[event];
  for (const auto& s : subs) {
    if (s.subscriber == subscriber) return;
  }
  subs.push_back(Subscription{subscriber, location, global, std::move(handler)});
}

void Broker::publish(const std::string& event, const std::string& publisher,
                     const std::string& location, const Payload& payload) {
  logger_(LogKind::Publish, {{"event", event},
                             {"location", location},
                             {"payload", payload_to_json(payload)},
                             {"publisher", publisher}});
  auto it = subscriptions_.find(event);
  if (it == subscriptions_.end()) return;
  for (const auto& sub : it->second) {
    if (!sub.global && sub.location != location) continue;
    // copy what the task needs; the subscription list may grow meanwhile
    auto handler = sub.handler;
    auto subscriber = sub.subscriber;
    scheduler_.schedule_at(scheduler_.now() + kDeliverLatencyMs,
                           [this, event, publisher, subscriber, payload, handler]() {
                             logger_(LogKind::Deliver, {{"event", event},
                                                        {"payload", payload_to_json(payload)},
                                                        {"publisher", publisher},
                                                        {"subscriber", subscriber}});
                             handler(event, payload);
                           });
  }
}

void Broker::register_actuator(const std::string& name, CommandHandler handler) {
  actuators_[name] = std::move(handler);
}

void Broker::send_command(const std::string& actuator, const std::string& action,
                          const Payload& args, const std::string& sender) {
  auto it = actuators_.find(actuator);
  if (it == actuators_.end()) throw SimError("no actuator '" + actuator + "' is registered");
  auto handler = it->second;
  scheduler_.schedule_at(scheduler_.now() + kCommandLatencyMs,
                         [this, actuator, action, args, sender, handler]() {
                           logger_(LogKind::Command, {{"action", action},
                                                      {"actuator", actuator},
                                                      {"args", payload_to_json(args)},
                                                      {"sender", sender}});
                           handler(action, args, sender);
                         });
}

void Broker::register_responder(const std::string& name, Responder responder) {
  responders_[name] = std::move(responder);
}

void Broker::send_request(const std::string& target, const Value& key,
                          const std::string& requester, ResponseHandler onResponse) {
  auto it = responders_.find(target);
  if (it == responders_.end()) throw SimError("no responder '" + target + "' is registered");
  std::int64_t correlationId = nextCorrelationId_++;
  logger_(LogKind::Request, {{"correlationId", correlationId},
                             {"key", value_to_json(key)},
                             {"requester", requester},
                             {"target", target}});
  auto responder = it->second;
  scheduler_.schedule_at(
      scheduler_.now() + kResponseLatencyMs,
      [this, correlationId, target, requester, key, responder, onResponse]() {
        auto [found, payload] = responder(key);
        logger_(LogKind::Response,
                {{"correlationId", correlationId},
                 {"found", found},
                 {"payload", found ? payload_to_json(payload) : nlohmann::json()},
                 {"requester", requester},
                 {"target", target}});
        onResponse(found, payload);
      });
}

void Broker::register_sink(const std::string& name) { sinks_[name] = true; }

void Broker::notify(const std::string& interactor, const std::string& event,
                    const Payload& payload, const std::string& sender) {
  if (!sinks_.count(interactor)) {
    throw SimError("no notification sink '" + interactor + "' is registered");
  }
  scheduler_.schedule_at(scheduler_.now() + kNotifyLatencyMs,
                         [this, interactor, event, payload, sender]() {
                           logger_(LogKind::Notify, {{"event", event},
                                                     {"interactor", interactor},
                                                     {"payload", payload_to_json(payload)},
                                                     {"sender", sender}});
                         });
}

}  // namespace iotforge
