#include "iotforge/format.hpp"

#include <gtest/gtest.h>

#include "iotforge/layout.hpp"
#include "iotforge/parsers.hpp"
#include "support.hpp"

namespace iotforge {
namespace {

using ::iotforge::testing::apps_dir;

std::vector<std::string> corpus_names() { return {"hvac", "fire-detection", "smart-home"}; }

template <typename Spec, typename ParseFn>
void round_trip_file(const std::filesystem::path& path, ParseFn parse) {
  SCOPED_TRACE(path.string());
  std::string source = read_text_file(path);
  auto first = parse(source, path.filename().string());
  ASSERT_TRUE(first.ok()) << render_diagnostics(first.diags);
  std::string formatted = format_spec(first.value);
  auto second = parse(formatted, path.filename().string());
  ASSERT_TRUE(second.ok()) << formatted << "\n" << render_diagnostics(second.diags);
  EXPECT_TRUE(same_structure(first.value, second.value)) << formatted;
  // One more pass: formatting is a fixpoint after the first round.
  EXPECT_EQ(format_spec(second.value), formatted);
}

TEST(Format, CorpusDomainRoundTrips) {
  for (const auto& name : corpus_names()) {
    ProjectLayout layout = discover_layout(apps_dir() / name);
    round_trip_file<DomainSpec>(layout.vocab, parse_domain);
  }
}

TEST(Format, CorpusArchitectureRoundTrips) {
  for (const auto& name : corpus_names()) {
    ProjectLayout layout = discover_layout(apps_dir() / name);
    round_trip_file<ArchitectureSpec>(layout.arch, parse_architecture);
  }
}

TEST(Format, CorpusUserInteractionRoundTrips) {
  for (const auto& name : corpus_names()) {
    ProjectLayout layout = discover_layout(apps_dir() / name);
    if (layout.ui.empty()) continue;
    round_trip_file<UserInteractionSpec>(layout.ui, parse_user_interaction);
  }
}

TEST(Format, CorpusDeploymentRoundTrips) {
  for (const auto& name : corpus_names()) {
    ProjectLayout layout = discover_layout(apps_dir() / name);
    round_trip_file<DeploymentSpec>(layout.deploy, parse_deployment);
  }
}

TEST(Format, CorpusRulesRoundTrip) {
  for (const auto& name : corpus_names()) {
    ProjectLayout layout = discover_layout(apps_dir() / name);
    if (layout.rules.empty()) continue;
    SCOPED_TRACE(name);
    std::string source = read_text_file(layout.rules);
    auto first = parse_logic_rules(source, "r");
    ASSERT_TRUE(first.ok()) << render_diagnostics(first.diags);
    std::string formatted = format_rules(first.value);
    auto second = parse_logic_rules(formatted, "r");
    ASSERT_TRUE(second.ok()) << formatted << "\n" << render_diagnostics(second.diags);
    EXPECT_TRUE(same_structure(first.value, second.value)) << formatted;
    EXPECT_EQ(format_rules(second.value), formatted);
  }
}

TEST(Format, DomainGoldenText) {
  auto r = parse_domain(
      "resources{periodicSensors{P{generate pe:R;sample period 0.5 for 2;}}"
      "eventDrivenSensors{E{generate ee:R;onCondition v>650;}}}",
      "v");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  EXPECT_EQ(format_spec(r.value),
            "resources {\n"
            "  periodicSensors {\n"
            "    P {\n"
            "      generate pe: R;\n"
            "      sample period 0.5 for 2;\n"
            "    }\n"
            "  }\n"
            "  eventDrivenSensors {\n"
            "    E {\n"
            "      generate ee: R;\n"
            "      onCondition v > 650;\n"
            "    }\n"
            "  }\n"
            "}\n");
}

TEST(Format, RulesGoldenText) {
  auto ok = parse_logic_rules("service S { on m when event.v > 1 -> set x = event.v, "
                              "command A.On(); }",
                              "r");
  ASSERT_TRUE(ok.ok()) << render_diagnostics(ok.diags);
  EXPECT_EQ(format_rules(ok.value),
            "service S {\n"
            "  on m when event.v > 1 ->\n"
            "    set x = event.v,\n"
            "    command A.On();\n"
            "}\n");
}

TEST(Format, EmptySpecsHaveStableShape) {
  EXPECT_EQ(format_spec(DomainSpec{}), "resources { }\n");
  EXPECT_EQ(format_spec(ArchitectureSpec{}), "computationalServices { }\n");
  EXPECT_EQ(format_spec(UserInteractionSpec{}), "userInteractions { }\n");
  EXPECT_EQ(format_spec(DeploymentSpec{}), "devices { }\n");
  EXPECT_EQ(format_rules(LogicRuleSet{}), "");
}

TEST(Format, QuotesNonIdentifierAttributeValues) {
  auto r = parse_deployment(
      "devices { N { location: \"a/b\"; resources: X; language-platform: \"Node.js\"; "
      "protocol: mqtt; } }",
      "d");
  ASSERT_TRUE(r.ok()) << render_diagnostics(r.diags);
  std::string formatted = format_spec(r.value);
  EXPECT_NE(formatted.find("language-platform: \"Node.js\";"), std::string::npos) << formatted;
  auto again = parse_deployment(formatted, "d");
  EXPECT_TRUE(again.ok()) << render_diagnostics(again.diags);
  EXPECT_TRUE(same_structure(r.value, again.value));
}

}  // namespace
}  // namespace iotforge
