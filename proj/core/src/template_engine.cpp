#include "iotforge/template_engine.hpp"

#include <cctype>

namespace iotforge {

namespace {

bool placeholder_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool placeholder_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Renderer {
 public:
  explicit Renderer(std::string_view tmpl) : tmpl_(tmpl) {}

  std::string run(const TemplateMap& root) {
    scopes_.push_back(&root);
    std::string out;
    render_until(out, {});
    return out;
  }

 private:
  const TemplateValue* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = (*it)->find(name);
      if (found != (*it)->end()) return &found->second;
    }
    return nullptr;
  }

  // Renders until EOF or until the given terminator directive ({/each}) is
  // consumed; `stop` empty means render to the end.
  void render_until(std::string& out, std::string_view stop) {
    while (pos_ < tmpl_.size()) {
      char c = tmpl_[pos_];
      if (c != '{') {
        out.push_back(c);
        ++pos_;
        continue;
      }
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < tmpl_.size() && tmpl_[pos_] == '#') {
        std::string directive = read_directive();
        if (directive.rfind("#each ", 0) == 0) {
          render_each(out, directive.substr(6));
          continue;
        }
        throw BadTemplate("unknown template directive '{" + directive + "}'");
      }
      if (pos_ < tmpl_.size() && tmpl_[pos_] == '/') {
        std::string directive = read_directive();
        if (!stop.empty() && directive == stop) return;
        throw BadTemplate("unmatched '{" + directive + "}'");
      }
      if (pos_ < tmpl_.size() && placeholder_start(tmpl_[pos_])) {
        std::string name;
        while (pos_ < tmpl_.size() && placeholder_cont(tmpl_[pos_])) name.push_back(tmpl_[pos_++]);
        if (pos_ < tmpl_.size() && tmpl_[pos_] == '}') {
          ++pos_;
          const TemplateValue* value = lookup(name);
          if (!value) throw MissingBinding(name);
          const auto* s = std::get_if<std::string>(&value->v);
          if (!s) throw BadTemplate("placeholder '" + name + "' is bound to a list");
          out += *s;
          continue;
        }
      }
      // Not a placeholder after all; emit the brace literally.
      pos_ = save + 1;
      out.push_back('{');
    }
    if (!stop.empty()) throw BadTemplate("missing '{/each}'");
  }

  std::string read_directive() {
    std::string directive;
    while (pos_ < tmpl_.size() && tmpl_[pos_] != '}') directive.push_back(tmpl_[pos_++]);
    if (pos_ >= tmpl_.size()) throw BadTemplate("unterminated template directive");
    ++pos_;  // '}'
    return directive;
  }

  void render_each(std::string& out, const std::string& listName) {
    const TemplateValue* value = lookup(listName);
    if (!value) throw MissingBinding(listName);
    const auto* items = std::get_if<std::vector<TemplateMap>>(&value->v);
    if (!items) throw BadTemplate("'{#each " + listName + "}' needs a list binding");
    std::size_t bodyStart = pos_;
    for (const auto& item : *items) {
      pos_ = bodyStart;
      scopes_.push_back(&item);
      render_until(out, "/each");
      scopes_.pop_back();
    }
    if (items->empty()) {
      pos_ = bodyStart;
      skip_block();
    }
  }

  // Lexically skips to the matching {/each} without evaluating placeholders.
  void skip_block() {
    int depth = 1;
    while (pos_ < tmpl_.size()) {
      if (tmpl_.compare(pos_, 7, "{#each ") == 0) {
        ++depth;
        pos_ += 7;
      } else if (tmpl_.compare(pos_, 7, "{/each}") == 0) {
        pos_ += 7;
        if (--depth == 0) return;
      } else {
        ++pos_;
      }
    }
    throw BadTemplate("missing '{/each}'");
  }

  std::string_view tmpl_;
  std::size_t pos_ = 0;
  std::vector<const TemplateMap*> scopes_;
};

}  // namespace

std::string render_template(std::string_view tmpl, const TemplateMap& bindings) {
  return Renderer(tmpl).run(bindings);
}

}  // namespace iotforge
