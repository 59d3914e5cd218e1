#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "iotforge/layout.hpp"
#include "iotforge/sim/engine.hpp"
#include "support.hpp"

namespace iotforge {
namespace {

using ::iotforge::testing::load_app;
using ::iotforge::testing::LoadedApp;
using ::iotforge::testing::package_project;

RunResult run_app(const LoadedApp& app, std::int64_t untilMs) {
  return run_simulation(package_project(app.project, 7), load_traces(app.layout),
                        load_seeds(app.layout), untilMs);
}

std::vector<const LogEntry*> entries_of(const RunLog& log, LogKind kind) {
  std::vector<const LogEntry*> out;
  for (const auto& e : log) {
    if (e.kind == kind) out.push_back(&e);
  }
  return out;
}

size_t count_publishes(const RunLog& log, const std::string& event) {
  size_t n = 0;
  for (const auto& e : log) {
    if (e.kind == LogKind::Publish && e.fields.at("event") == event) ++n;
  }
  return n;
}

// The badge-driven heating app walks the full interaction surface: publish,
// deliver, request/response, a derived publish, a command with a computed
// argument, and a parameterless power command. The log is checked in order.
TEST(ScenarioTest, BadgeHeatingEndToEnd) {
  LoadedApp app = load_app("hvac");
  ASSERT_TRUE(app.diags.empty());
  RunResult result = run_app(app, 360000);
  EXPECT_TRUE(result.ruleErrors.empty());

  const RunLog& log = result.log;
  ASSERT_EQ(log.size(), 12u);

  EXPECT_EQ(log[0].kind, LogKind::Publish);
  EXPECT_EQ(log[0].t, 10000);
  EXPECT_EQ(log[0].fields.at("event"), "badgeDetected");
  EXPECT_EQ(log[0].fields.at("publisher"), "BadgeReader");
  EXPECT_EQ(log[0].fields.at("location"), "home/room#1");
  EXPECT_EQ(log[0].fields.at("payload").at("badgeID"), "12");

  EXPECT_EQ(log[1].kind, LogKind::Deliver);
  EXPECT_EQ(log[1].t, 10001);
  EXPECT_EQ(log[1].fields.at("subscriber"), "Proximity");

  EXPECT_EQ(log[2].kind, LogKind::Request);
  EXPECT_EQ(log[2].t, 10001);
  EXPECT_EQ(log[2].fields.at("correlationId").get<std::int64_t>(), 1);
  EXPECT_EQ(log[2].fields.at("key"), "12");
  EXPECT_EQ(log[2].fields.at("requester"), "Proximity");
  EXPECT_EQ(log[2].fields.at("target"), "ProfileDB");

  EXPECT_EQ(log[3].kind, LogKind::Response);
  EXPECT_EQ(log[3].t, 10006);
  EXPECT_EQ(log[3].fields.at("correlationId").get<std::int64_t>(), 1);
  EXPECT_TRUE(log[3].fields.at("found").get<bool>());
  EXPECT_DOUBLE_EQ(log[3].fields.at("payload").at("tempValue").get<double>(), 30.0);

  EXPECT_EQ(log[4].kind, LogKind::Publish);
  EXPECT_EQ(log[4].t, 10006);
  EXPECT_EQ(log[4].fields.at("event"), "tempPref");
  EXPECT_EQ(log[4].fields.at("publisher"), "Proximity");
  EXPECT_DOUBLE_EQ(log[4].fields.at("payload").at("tempValue").get<double>(), 30.0);

  EXPECT_EQ(log[5].kind, LogKind::Deliver);
  EXPECT_EQ(log[5].t, 10007);
  EXPECT_EQ(log[5].fields.at("subscriber"), "RoomController");

  EXPECT_EQ(log[6].kind, LogKind::Command);
  EXPECT_EQ(log[6].t, 10008);
  EXPECT_EQ(log[6].fields.at("actuator"), "Heater");
  EXPECT_EQ(log[6].fields.at("action"), "SetTemp");
  EXPECT_EQ(log[6].fields.at("sender"), "RoomController");
  EXPECT_DOUBLE_EQ(log[6].fields.at("args").at("setTemp").get<double>(), 30.0);

  EXPECT_EQ(log[7].kind, LogKind::StateChange);
  EXPECT_EQ(log[7].t, 10008);
  EXPECT_EQ(log[7].fields.at("owner"), "Heater");
  EXPECT_EQ(log[7].fields.at("field"), "setTemp");
  EXPECT_DOUBLE_EQ(log[7].fields.at("value").get<double>(), 30.0);

  EXPECT_EQ(log[8].kind, LogKind::Publish);
  EXPECT_EQ(log[8].t, 60000);
  EXPECT_EQ(log[8].fields.at("event"), "badgeDisappeared");

  EXPECT_EQ(log[9].kind, LogKind::Deliver);
  EXPECT_EQ(log[9].t, 60001);
  EXPECT_EQ(log[9].fields.at("subscriber"), "Proximity");

  EXPECT_EQ(log[10].kind, LogKind::Command);
  EXPECT_EQ(log[10].t, 60002);
  EXPECT_EQ(log[10].fields.at("action"), "Off");
  EXPECT_EQ(log[10].fields.at("sender"), "Proximity");

  EXPECT_EQ(log[11].kind, LogKind::StateChange);
  EXPECT_EQ(log[11].t, 60002);
  EXPECT_EQ(log[11].fields.at("owner"), "Heater");
  EXPECT_EQ(log[11].fields.at("field"), "power");
  EXPECT_EQ(log[11].fields.at("value"), "off");
}

// Fire detection requires both signals: a five-sample average above 50 and a
// smoke reading over the 650 threshold. With the shipped traces both hold at
// t=20000, so the alarm fires and the resident is notified exactly once.
TEST(ScenarioTest, FireDetectionRaisesAlarmAndNotification) {
  LoadedApp app = load_app("fire-detection");
  ASSERT_TRUE(app.diags.empty());
  RunResult result = run_app(app, 360000);
  EXPECT_TRUE(result.ruleErrors.empty());

  auto commands = entries_of(result.log, LogKind::Command);
  ASSERT_EQ(commands.size(), 1u);
  EXPECT_EQ(commands[0]->t, 20003);
  EXPECT_EQ(commands[0]->fields.at("actuator"), "Alarm");
  EXPECT_EQ(commands[0]->fields.at("action"), "On");
  EXPECT_EQ(commands[0]->fields.at("sender"), "FireController");

  auto notifies = entries_of(result.log, LogKind::Notify);
  ASSERT_EQ(notifies.size(), 1u);
  EXPECT_EQ(notifies[0]->t, 20003);
  EXPECT_EQ(notifies[0]->fields.at("interactor"), "EndUserApp");
  EXPECT_EQ(notifies[0]->fields.at("event"), "fireNotify");
  EXPECT_EQ(notifies[0]->fields.at("payload").at("message"), "fire detected");

  // Sampling arithmetic for the whole horizon. The 360th sample publishes at
  // t=360000 but its delivery lands at 360001, past the horizon, so only 71
  // of the 72 five-sample windows complete.
  EXPECT_EQ(count_publishes(result.log, "tempMeasurement"), 360u);
  EXPECT_EQ(count_publishes(result.log, "roomAvgTempMeasurement"), 71u);
  EXPECT_EQ(count_publishes(result.log, "smokeMeasurement"), 1u);
  EXPECT_EQ(count_publishes(result.log, "smokeValue"), 1u);

  // The derived fire event reaches both the local controller and the global
  // monitor on its cloud device.
  std::vector<std::string> fireSubscribers;
  for (const auto* e : entries_of(result.log, LogKind::Deliver)) {
    if (e->fields.at("event") == "smokeValue") {
      fireSubscribers.push_back(e->fields.at("subscriber").get<std::string>());
    }
  }
  EXPECT_EQ(fireSubscribers,
            (std::vector<std::string>{"FireMonitor", "FireController"}));
}

TEST(ScenarioTest, NoSmokeEventMeansNoAlarm) {
  LoadedApp app = load_app("fire-detection");
  ASSERT_TRUE(app.diags.empty());
  // Same shape as the shipped trace, but the smoke reading stays under the
  // sensor's own threshold, so the event-driven sensor never publishes.
  SensorTraces traces = parse_trace_jsonl(
      "{\"sensor\":\"TemperatureSensor\",\"t\":0,\"fields\":{\"tempValue\":60.0}}\n"
      "{\"sensor\":\"SmokeDetector\",\"t\":20000,\"fields\":{\"smokeValue\":600.0}}\n",
      "quiet.jsonl");
  RunResult result =
      run_simulation(package_project(app.project, 7), traces, load_seeds(app.layout), 360000);
  EXPECT_TRUE(result.ruleErrors.empty());
  EXPECT_EQ(count_publishes(result.log, "smokeMeasurement"), 0u);
  EXPECT_TRUE(entries_of(result.log, LogKind::Command).empty());
  EXPECT_TRUE(entries_of(result.log, LogKind::Notify).empty());
}

TEST(ScenarioTest, SmokeAloneWithoutHeatDoesNotRaiseTheAlarm) {
  LoadedApp app = load_app("fire-detection");
  ASSERT_TRUE(app.diags.empty());
  // Smoke crosses the sensor threshold but the room is cool, so the service
  // guard (average above 50) rejects the event.
  SensorTraces traces = parse_trace_jsonl(
      "{\"sensor\":\"TemperatureSensor\",\"t\":0,\"fields\":{\"tempValue\":40.0}}\n"
      "{\"sensor\":\"SmokeDetector\",\"t\":20000,\"fields\":{\"smokeValue\":700.0}}\n",
      "cool.jsonl");
  RunResult result =
      run_simulation(package_project(app.project, 7), traces, load_seeds(app.layout), 360000);
  EXPECT_TRUE(result.ruleErrors.empty());
  EXPECT_EQ(count_publishes(result.log, "smokeMeasurement"), 1u);
  EXPECT_EQ(count_publishes(result.log, "smokeValue"), 0u);
  EXPECT_TRUE(entries_of(result.log, LogKind::Command).empty());
  EXPECT_TRUE(entries_of(result.log, LogKind::Notify).empty());
}

// Home monitoring: every humidity sample triggers an on-demand weather fetch
// whose answer lands on the dashboard.
TEST(ScenarioTest, HomeMonitoringFeedsTheDashboard) {
  LoadedApp app = load_app("smart-home");
  ASSERT_TRUE(app.diags.empty());
  RunResult result = run_app(app, 360000);
  EXPECT_TRUE(result.ruleErrors.empty());

  EXPECT_EQ(count_publishes(result.log, "tempMeasurement"), 60u);    // 120s / 2s
  EXPECT_EQ(count_publishes(result.log, "humidityMeasurement"), 40u);  // 120s / 3s
  EXPECT_EQ(count_publishes(result.log, "humidityCount"), 4u);       // 40 samples / 10

  auto requests = entries_of(result.log, LogKind::Request);
  ASSERT_EQ(requests.size(), 40u);
  EXPECT_EQ(requests.front()->fields.at("target"), "YahooWeatherService");
  for (const auto* e : entries_of(result.log, LogKind::Response)) {
    EXPECT_TRUE(e->fields.at("found").get<bool>());
  }

  auto notifies = entries_of(result.log, LogKind::Notify);
  ASSERT_EQ(notifies.size(), 40u);
  for (const auto* e : notifies) {
    EXPECT_EQ(e->fields.at("interactor"), "Dashboard");
    EXPECT_EQ(e->fields.at("event"), "dashboardUpdate");
    EXPECT_EQ(e->fields.at("payload").at("summary"), "update");
    EXPECT_DOUBLE_EQ(e->fields.at("payload").at("outsideTemp").get<double>(), 18.5);
  }
  // First humidity sample at t=3000: deliver +1, response +5, notify +1.
  EXPECT_EQ(notifies.front()->t, 3007);

  // The counting window publishes a long.
  for (const auto& e : result.log) {
    if (e.kind == LogKind::Publish && e.fields.at("event") == "humidityCount") {
      EXPECT_EQ(e.fields.at("payload").at("humidityValue").get<std::int64_t>(), 10);
    }
  }
}

}  // namespace
}  // namespace iotforge
