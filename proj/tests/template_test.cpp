#include "iotforge/template_engine.hpp"

#include <gtest/gtest.h>

namespace iotforge {
namespace {

TEST(Template, SubstitutesPlaceholders) {
  TemplateMap bindings{{"name", "Heater"}, {"kind", "actuator"}};
  EXPECT_EQ(render_template("driver {name} is an {kind}.", bindings),
            "driver Heater is an actuator.");
}

TEST(Template, RepeatsEachBlockPerElement) {
  TemplateMap bindings{
      {"svc", "FireState"},
      {"events", std::vector<TemplateMap>{{{"event", "a"}}, {{"event", "b"}}}},
  };
  EXPECT_EQ(render_template("{svc}:{#each events} onNew{event}(){/each}", bindings),
            "FireState: onNewa() onNewb()");
}

TEST(Template, ElementBindingsShadowOuterScope) {
  TemplateMap bindings{
      {"x", "outer"},
      {"items", std::vector<TemplateMap>{{{"x", "inner"}}, {}}},
  };
  EXPECT_EQ(render_template("{#each items}[{x}]{/each}", bindings), "[inner][outer]");
}

TEST(Template, NestedEachBlocks) {
  TemplateMap bindings{
      {"rows",
       std::vector<TemplateMap>{
           {{"row", "1"},
            {"cols", std::vector<TemplateMap>{{{"col", "a"}}, {{"col", "b"}}}}},
           {{"row", "2"}, {"cols", std::vector<TemplateMap>{{{"col", "c"}}}}},
       }},
  };
  EXPECT_EQ(render_template("{#each rows}{row}:{#each cols}{col}{/each};{/each}", bindings),
            "1:ab;2:c;");
}

TEST(Template, EmptyListSkipsBlock) {
  TemplateMap bindings{{"items", std::vector<TemplateMap>{}}};
  EXPECT_EQ(render_template("a{#each items}{missing}{/each}b", bindings), "ab");
}

TEST(Template, EmptyNestedBlocksSkipLexically) {
  TemplateMap bindings{
      {"outer", std::vector<TemplateMap>{}},
  };
  EXPECT_EQ(render_template("x{#each outer}{#each inner}{v}{/each}{/each}y", bindings), "xy");
}

TEST(Template, MissingBindingNamesThePlaceholder) {
  try {
    render_template("hello {who}", {});
    FAIL() << "expected MissingBinding";
  } catch (const MissingBinding& e) {
    EXPECT_EQ(e.placeholder(), "who");
  }
}

TEST(Template, BadTemplateCases) {
  TemplateMap scalar{{"x", "1"}};
  TemplateMap list{{"xs", std::vector<TemplateMap>{{{"v", "1"}}}}};
  EXPECT_THROW(render_template("{#each xs}{v}", list), BadTemplate);
  EXPECT_THROW(render_template("{/each}", scalar), BadTemplate);
  EXPECT_THROW(render_template("{#unknown x}", scalar), BadTemplate);
  EXPECT_THROW(render_template("{#each x}{/each}", scalar), BadTemplate);
  EXPECT_THROW(render_template("{xs}", list), BadTemplate);
  EXPECT_THROW(render_template("{#each xs", list), BadTemplate);
}

TEST(Template, LiteralBracesPassThrough) {
  TemplateMap bindings{{"name", "X"}};
  EXPECT_EQ(render_template("struct {name} { int v; }", bindings), "struct X { int v; }");
  EXPECT_EQ(render_template("{ {} {1} {name}", bindings), "{ {} {1} X");
  EXPECT_EQ(render_template("{name } stays", bindings), "{name } stays");
}

TEST(Template, EmptyTemplateAndNoPlaceholders) {
  EXPECT_EQ(render_template("", {}), "");
  EXPECT_EQ(render_template("plain text\n", {}), "plain text\n");
}

}  // namespace
}  // namespace iotforge
