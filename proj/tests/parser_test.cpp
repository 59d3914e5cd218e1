#include "iotforge/parsers.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

namespace iotforge {
namespace {

using ::iotforge::testing::count_code;
using ::iotforge::testing::has_code;

constexpr const char* kFullVocab = R"(resources {
  structs {
    R {
      a: double;
      b: long;
      c: String;
    }
  }
  tags {
    T {
      generate e1: R;
      generate e2: R;
    }
  }
  periodicSensors {
    P {
      generate pe: R;
      sample period 2 for 10;
    }
  }
  eventDrivenSensors {
    E {
      generate ee: R;
      onCondition a > 5 && b < 3;
    }
  }
  requestBasedSensors {
    Q {
      generate qe: R;
      accessed-by k: String;
    }
  }
  actuators {
    A {
      action On();
      action Set(x: double, y: long);
    }
  }
  storages {
    S {
      generate se: R;
      accessed-by id: String;
    }
  }
}
)";

TEST(DomainParser, FullSpecModel) {
  auto r = parse_domain(kFullVocab, "v");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  const DomainSpec& d = r.value;

  ASSERT_EQ(d.records.size(), 1u);
  ASSERT_EQ(d.records[0].fields.size(), 3u);
  EXPECT_EQ(d.records[0].fields[0].type, FieldType::Double);
  EXPECT_EQ(d.records[0].fields[1].type, FieldType::Long);
  EXPECT_EQ(d.records[0].fields[2].type, FieldType::String);

  ASSERT_EQ(d.tags.size(), 1u);
  ASSERT_EQ(d.tags[0].generates.size(), 2u);
  EXPECT_EQ(d.tags[0].generates[1].event, "e2");
  EXPECT_EQ(d.tags[0].generates[1].payloadType, "R");

  ASSERT_EQ(d.sensors.size(), 3u);
  EXPECT_EQ(d.sensors[0].kind, SensorKind::Periodic);
  EXPECT_EQ(d.sensors[0].samplePeriodMs, 2000);
  EXPECT_EQ(d.sensors[0].durationMs, 10000);
  EXPECT_EQ(d.sensors[1].kind, SensorKind::EventDriven);
  EXPECT_EQ(format_expr(d.sensors[1].condition), "a > 5 && b < 3");
  EXPECT_EQ(d.sensors[2].kind, SensorKind::RequestBased);
  EXPECT_EQ(d.sensors[2].accessKey.name, "k");
  EXPECT_EQ(d.sensors[2].accessKey.type, FieldType::String);

  ASSERT_EQ(d.actuators.size(), 1u);
  ASSERT_EQ(d.actuators[0].actions.size(), 2u);
  EXPECT_TRUE(d.actuators[0].actions[0].params.empty());
  ASSERT_EQ(d.actuators[0].actions[1].params.size(), 2u);
  EXPECT_EQ(d.actuators[0].actions[1].params[1].name, "y");
  EXPECT_EQ(d.actuators[0].actions[1].params[1].type, FieldType::Long);

  ASSERT_EQ(d.storages.size(), 1u);
  EXPECT_EQ(d.storages[0].generates.event, "se");
  EXPECT_EQ(d.storages[0].accessKey.name, "id");
}

TEST(DomainParser, FractionalSecondsBecomeMilliseconds) {
  auto r = parse_domain(R"(resources {
  periodicSensors {
    P { generate pe: R; sample period 0.5 for 2; }
  }
})",
                        "v");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  ASSERT_EQ(r.value.sensors.size(), 1u);
  EXPECT_EQ(r.value.sensors[0].samplePeriodMs, 500);
  EXPECT_EQ(r.value.sensors[0].durationMs, 2000);
}

TEST(DomainParser, ErrorCodes) {
  struct Case {
    const char* source;
    const char* code;
  };
  const Case cases[] = {
      {"resources { structs { A { x: double; } } structs { B { y: long; } } }",
       "DuplicateSection"},
      {"resources { tags { T { generate e: R; } T { generate f: R; } } }",
       "DuplicateResource"},
      {"resources { tags { consume { generate e: R; } } }", "ReservedWord"},
      {"resources { tags { T { } } }", "MissingGenerate"},
      {"resources { periodicSensors { P { generate a: R; generate b: R; sample period 1 for 2; } } }",
       "MultipleGenerate"},
      {"resources { periodicSensors { P { generate a: R; } } }", "MissingSample"},
      {"resources { periodicSensors { P { generate a: R; sample period 0 for 2; } } }",
       "BadPeriod"},
      {"resources { eventDrivenSensors { E { generate a: R; } } }", "MissingCondition"},
      {"resources { requestBasedSensors { Q { generate a: R; } } }", "MissingAccessKey"},
      {"resources { storages { S { generate a: R; } } }", "MissingAccessKey"},
      {"resources { gadgets { G { } } }", "UnknownSection"},
      {"resources { structs { A { x: double; x: long; } } }", "DuplicateField"},
      {"resources { structs { A { x: float; } } }", "UnknownType"},
      {"resources { actuators { A { action On(); action On(); } } }", "DuplicateAction"},
  };
  for (const auto& c : cases) {
    auto r = parse_domain(c.source, "v");
    EXPECT_FALSE(r.ok()) << c.source;
    EXPECT_TRUE(has_code(r.diags, c.code))
        << c.source << "\n" << render_diagnostics(r.diags);
  }
}

TEST(DomainParser, MissingClosingBraceIsSyntaxError) {
  auto r = parse_domain("resources { structs { A { x: double; }", "v");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_code(r.diags, "UnexpectedEof"));
}

TEST(DomainParser, RecoversAndReportsMultipleErrors) {
  auto r = parse_domain(R"(resources {
  structs {
    A { x: float; }
  }
  tags {
    T { }
  }
  periodicSensors {
    P { generate a: R; sample period 0 for 2; }
  }
})",
                        "v");
  EXPECT_TRUE(has_code(r.diags, "UnknownType"));
  EXPECT_TRUE(has_code(r.diags, "MissingGenerate"));
  EXPECT_TRUE(has_code(r.diags, "BadPeriod"));
}

TEST(ArchParser, FullSpecModel) {
  auto r = parse_architecture(R"(computationalServices {
  Common Avg {
    consume m;
    COMPUTE AVG_BY_SAMPLE(5) on v;
    generate avg: R;
  }
  Custom C {
    consume avg;
    consume other from global;
    request to Store;
    generate out: R;
    command Set(x = value, y = 2) to A;
  }
})",
                              "a");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  ASSERT_EQ(r.value.services.size(), 2u);

  const ServiceDecl& avg = r.value.services[0];
  EXPECT_EQ(avg.kind, ServiceKind::Common);
  ASSERT_TRUE(avg.computes.has_value());
  EXPECT_EQ(avg.computes->op, ComputeOp::AvgBySample);
  EXPECT_EQ(avg.computes->windowSize, 5);
  EXPECT_EQ(avg.computes->field, "v");

  const ServiceDecl& c = r.value.services[1];
  EXPECT_EQ(c.kind, ServiceKind::Custom);
  ASSERT_EQ(c.consumes.size(), 2u);
  EXPECT_EQ(c.consumes[0].scope, ConsumeScope::SameLocation);
  EXPECT_EQ(c.consumes[1].scope, ConsumeScope::Global);
  EXPECT_EQ(c.requests, (std::vector<std::string>{"Store"}));
  ASSERT_EQ(c.commands.size(), 1u);
  EXPECT_EQ(c.commands[0].action, "Set");
  EXPECT_EQ(c.commands[0].actuator, "A");
  ASSERT_EQ(c.commands[0].args.size(), 2u);
  EXPECT_EQ(c.commands[0].args[0].field, std::optional<std::string>("value"));
  EXPECT_FALSE(c.commands[0].args[0].literal.has_value());
  ASSERT_TRUE(c.commands[0].args[1].literal.has_value());
  EXPECT_EQ(*c.commands[0].args[1].literal, Value{std::int64_t{2}});
}

TEST(ArchParser, ErrorCodes) {
  struct Case {
    const char* source;
    const char* code;
  };
  const Case cases[] = {
      {"computationalServices { Common X { consume m; COMPUTE AVG_BY_SAMPLE(3) on v; "
       "request to S; } }",
       "CommonServiceItem"},
      {"computationalServices { Common X { consume m; } }", "MissingCompute"},
      {"computationalServices { Custom X { consume m; COMPUTE AVG_BY_SAMPLE(3) on v; } }",
       "UnexpectedCompute"},
      {"computationalServices { Common X { COMPUTE AVG_BY_SAMPLE(0) on v; } }", "BadWindow"},
      {"computationalServices { Common X { COMPUTE AVG_BY_SAMPLE(2.5) on v; } }", "BadWindow"},
      {"computationalServices { Common X { COMPUTE AVG_BY_SAMPLE(2) on v; "
       "COMPUTE SUM_BY_SAMPLE(3) on v; } }",
       "DuplicateCompute"},
      {"computationalServices { Custom X { } Custom X { } }", "DuplicateService"},
  };
  for (const auto& c : cases) {
    auto r = parse_architecture(c.source, "a");
    EXPECT_FALSE(r.ok()) << c.source;
    EXPECT_TRUE(has_code(r.diags, c.code))
        << c.source << "\n" << render_diagnostics(r.diags);
  }
}

TEST(UiParser, FullSpecModel) {
  auto r = parse_user_interaction(R"(userInteractions {
  structs {
    N {
      message: String;
    }
  }
  notify App(alert: N);
  notify Board(update: N);
})",
                                  "u");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  ASSERT_EQ(r.value.records.size(), 1u);
  ASSERT_EQ(r.value.interactors.size(), 2u);
  EXPECT_EQ(r.value.interactors[0].name, "App");
  EXPECT_EQ(r.value.interactors[0].payload.event, "alert");
  EXPECT_EQ(r.value.interactors[1].payload.payloadType, "N");
}

TEST(UiParser, ErrorCodes) {
  auto dup = parse_user_interaction(
      "userInteractions { notify A(e: N); notify A(f: N); }", "u");
  EXPECT_TRUE(has_code(dup.diags, "DuplicateInteractor"));

  auto rec = parse_user_interaction(
      "userInteractions { structs { N { a: double; } N { b: long; } } }", "u");
  EXPECT_TRUE(has_code(rec.diags, "DuplicateRecord"));
}

TEST(DeployParser, FullSpecModel) {
  auto r = parse_deployment(R"(devices {
  Hub {
    location: "home/room#1";
    resources: SensorA, SvcB, AppC;
    language-platform: nodejs;
    protocol: mqtt;
    database: mongodb;
  }
})",
                            "d");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  ASSERT_EQ(r.value.devices.size(), 1u);
  const DeviceDecl& dev = r.value.devices[0];
  EXPECT_EQ(dev.location, "home/room#1");
  EXPECT_EQ(dev.resources, (std::vector<std::string>{"SensorA", "SvcB", "AppC"}));
  EXPECT_EQ(dev.platform, "nodejs");
  EXPECT_EQ(dev.protocol, "mqtt");
  EXPECT_EQ(dev.database, std::optional<std::string>("mongodb"));
}

TEST(DeployParser, PlatformIsOptional) {
  auto r = parse_deployment(R"(devices {
  Node {
    location: "a/b";
    resources: X;
    protocol: mqtt;
  }
})",
                            "d");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  EXPECT_TRUE(r.value.devices[0].platform.empty());
  EXPECT_FALSE(r.value.devices[0].database.has_value());
}

TEST(DeployParser, ErrorCodes) {
  struct Case {
    const char* source;
    const char* code;
  };
  const Case cases[] = {
      {"devices { N { location: \"a\"; location: \"b\"; protocol: mqtt; } }",
       "DuplicateAttribute"},
      {"devices { N { protocol: mqtt; } }", "MissingLocation"},
      {"devices { N { location: \"a\"; } }", "MissingProtocol"},
      {"devices { N { location: \"a\"; protocol: mqtt; } N { location: \"b\"; protocol: mqtt; } }",
       "DuplicateDevice"},
      {"devices { N { location: a/b; protocol: mqtt; } }", "Syntax"},
  };
  for (const auto& c : cases) {
    auto r = parse_deployment(c.source, "d");
    EXPECT_FALSE(r.ok()) << c.source;
    EXPECT_TRUE(has_code(r.diags, c.code))
        << c.source << "\n" << render_diagnostics(r.diags);
  }
}

TEST(RulesParser, FullSpecModel) {
  const std::string source = R"(service S {
  on m when event.v > 1.5 ->
    set last = event.v,
    emit out(v = state.last),
    command Act.Set(x = 2),
    request Store(event.id),
    notify App(message = "hi");
  on response resp -> emit out(v = response.v);
}
)";
  auto r = parse_logic_rules(source, "r");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  ASSERT_EQ(r.value.services.size(), 1u);
  const ServiceRules& block = r.value.services[0];
  EXPECT_EQ(block.service, "S");
  ASSERT_EQ(block.rules.size(), 2u);

  const LogicRule& first = block.rules[0];
  EXPECT_FALSE(first.trigger.onResponse);
  EXPECT_EQ(first.trigger.event, "m");
  EXPECT_EQ(format_expr(first.trigger.guard), "event.v > 1.5");
  ASSERT_EQ(first.actions.size(), 5u);
  EXPECT_TRUE(std::holds_alternative<SetStateAction>(first.actions[0]));
  EXPECT_TRUE(std::holds_alternative<EmitAction>(first.actions[1]));
  EXPECT_TRUE(std::holds_alternative<CommandAction>(first.actions[2]));
  EXPECT_TRUE(std::holds_alternative<RequestAction>(first.actions[3]));
  EXPECT_TRUE(std::holds_alternative<NotifyAction>(first.actions[4]));
  EXPECT_EQ(std::get<CommandAction>(first.actions[2]).actuator, "Act");
  EXPECT_EQ(std::get<RequestAction>(first.actions[3]).target, "Store");
  EXPECT_EQ(format_expr(std::get<RequestAction>(first.actions[3]).key), "event.id");

  const LogicRule& second = block.rules[1];
  EXPECT_TRUE(second.trigger.onResponse);
  EXPECT_EQ(second.trigger.event, "resp");
  EXPECT_EQ(second.trigger.guard, nullptr);
}

TEST(RulesParser, SourceTextIsVerbatimSlice) {
  const std::string source =
      "// preamble\nservice A {\n  on m -> set x = 1;\n}\n\nservice B {\n  on m -> set y = 2;\n}\n";
  auto r = parse_logic_rules(source, "r");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  ASSERT_EQ(r.value.services.size(), 2u);
  EXPECT_EQ(r.value.services[0].sourceText, "service A {\n  on m -> set x = 1;\n}");
  EXPECT_EQ(r.value.services[1].sourceText, "service B {\n  on m -> set y = 2;\n}");
}

TEST(RulesParser, DuplicateBlockReported) {
  auto r = parse_logic_rules("service A { on m -> set x = 1; } service A { on m -> set y = 2; }",
                             "r");
  EXPECT_TRUE(has_code(r.diags, "DuplicateRuleBlock"));
}

TEST(RulesParser, EmptyInputIsValid) {
  auto r = parse_logic_rules("", "r");
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.value.services.empty());
}

TEST(Diagnostics, SortedByPosition) {
  auto r = parse_domain(R"(resources {
  structs {
    A { x: float; }
    A { y: wrong; }
  }
})",
                        "v");
  ASSERT_GE(r.diags.size(), 2u);
  for (std::size_t i = 1; i < r.diags.size(); ++i) {
    EXPECT_LE(r.diags[i - 1].span.line, r.diags[i].span.line);
  }
}

}  // namespace
}  // namespace iotforge
