#pragma once

#include <string>

#include "iotforge/rules.hpp"
#include "iotforge/spec_model.hpp"

namespace iotforge {

// Canonical DSL renderings: 2-space indent, LF line endings, declaration
// order preserved. format_spec(parse(format_spec(s))) == format_spec(s).
std::string format_spec(const DomainSpec& spec);
std::string format_spec(const ArchitectureSpec& spec);
std::string format_spec(const UserInteractionSpec& spec);
std::string format_spec(const DeploymentSpec& spec);
std::string format_rules(const LogicRuleSet& rules);

}  // namespace iotforge
