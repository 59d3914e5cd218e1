#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iotforge {

struct TemplateValue;
using TemplateMap = std::map<std::string, TemplateValue>;

// A binding is either a string or a list of nested binding maps (for
// {#each …} blocks).
struct TemplateValue {
  std::variant<std::string, std::vector<TemplateMap>> v;

  TemplateValue(const char* s) : v(std::string(s)) {}
  TemplateValue(std::string s) : v(std::move(s)) {}
  TemplateValue(std::vector<TemplateMap> items) : v(std::move(items)) {}
};

class MissingBinding : public std::runtime_error {
 public:
  explicit MissingBinding(const std::string& name)
      : std::runtime_error("template placeholder '" + name + "' is unbound"), name_(name) {}

  const std::string& placeholder() const { return name_; }

 private:
  std::string name_;
};

class BadTemplate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Substitutes {name} placeholders and repeats {#each list}…{/each} blocks
// once per list element; element bindings shadow outer ones. A '{' not
// introducing a placeholder or block is literal text.
std::string render_template(std::string_view tmpl, const TemplateMap& bindings);

}  // namespace iotforge
