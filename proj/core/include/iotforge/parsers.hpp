#pragma once

#include <string>
#include <string_view>

#include "iotforge/diagnostics.hpp"
#include "iotforge/rules.hpp"
#include "iotforge/spec_model.hpp"

namespace iotforge {

// Parsers always produce a value; when diags contains Errors the value only
// covers the declarations parsed before/around the error points.
template <typename T>
struct ParseResult {
  T value{};
  Diagnostics diags;

  bool ok() const { return !has_errors(diags); }
};

ParseResult<DomainSpec> parse_domain(std::string_view source, const std::string& file);
ParseResult<ArchitectureSpec> parse_architecture(std::string_view source, const std::string& file);
ParseResult<UserInteractionSpec> parse_user_interaction(std::string_view source,
                                                        const std::string& file);
ParseResult<DeploymentSpec> parse_deployment(std::string_view source, const std::string& file);
ParseResult<LogicRuleSet> parse_logic_rules(std::string_view source, const std::string& file);

// Parses a bare expression, e.g. an onCondition body stored in a descriptor.
ParseResult<ExprPtr> parse_expr_text(std::string_view source, const std::string& file);

}  // namespace iotforge
