#include "iotforge/parsers.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <utility>

#include "iotforge/lexer.hpp"

namespace iotforge {

namespace {

class Parser {
 public:
  Parser(std::string_view source, const std::string& file) : source_(source), file_(file) {
    LexResult lr = lex(source, file);
    tokens_ = std::move(lr.tokens);
    diags_ = std::move(lr.diags);
  }

  Diagnostics take_diags() { return std::move(diags_); }

 protected:
  const Token& cur() const { return tokens_[pos_]; }

  bool at_end() const { return cur().kind == TokenKind::EndOfFile; }

  bool at_punct(std::string_view p) const {
    return cur().kind == TokenKind::Punct && cur().text == p;
  }

  bool at_word(std::string_view w) const {
    return cur().kind == TokenKind::Identifier && cur().text == w;
  }

  Token take() {
    Token t = cur();
    if (!at_end()) ++pos_;
    return t;
  }

  bool accept_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    take();
    return true;
  }

  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    take();
    return true;
  }

  void error_here(std::string code, std::string message) {
    if (at_end()) code = "UnexpectedEof";
    diags_.push_back(make_error(std::move(code), std::move(message), cur().span));
  }

  bool expect_punct(std::string_view p, std::string_view context) {
    if (accept_punct(p)) return true;
    std::string code = p == ")" ? "UnbalancedParen" : "Syntax";
    error_here(std::move(code),
               "expected '" + std::string(p) + "' " + std::string(context) + ", found " +
                   describe(cur()));
    return false;
  }

  bool expect_word(std::string_view w, std::string_view context) {
    if (accept_word(w)) return true;
    error_here("Syntax", "expected '" + std::string(w) + "' " + std::string(context) + ", found " +
                             describe(cur()));
    return false;
  }

  // A user-supplied name: identifier that is not a reserved word.
  std::optional<Token> expect_name(std::string_view what) {
    if (cur().kind != TokenKind::Identifier) {
      error_here("Syntax", "expected " + std::string(what) + ", found " + describe(cur()));
      return std::nullopt;
    }
    if (is_keyword(cur().text)) {
      error_here("ReservedWord", "'" + cur().text + "' is a reserved word and cannot name a " +
                                     std::string(what));
      return std::nullopt;
    }
    return take();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::Identifier: return "'" + t.text + "'";
      case TokenKind::Number: return "number " + t.text;
      case TokenKind::String: return "string literal";
      case TokenKind::Punct: return "'" + t.text + "'";
      case TokenKind::EndOfFile: return "end of input";
    }
    return "?";
  }

  // Skips ahead to a likely declaration boundary: past the next ';', or up
  // to the next '}' or keyword. Guarantees progress.
  void synchronize() {
    if (!at_end()) take();
    while (!at_end()) {
      if (at_punct(";")) {
        take();
        return;
      }
      if (at_punct("}")) return;
      if (cur().kind == TokenKind::Identifier && is_keyword(cur().text)) return;
      take();
    }
  }

  std::optional<FieldType> parse_field_type() {
    if (accept_word("double")) return FieldType::Double;
    if (accept_word("long")) return FieldType::Long;
    if (accept_word("String")) return FieldType::String;
    error_here("UnknownType", "expected 'double', 'long' or 'String', found " + describe(cur()));
    return std::nullopt;
  }

  std::optional<Value> parse_number_literal() {
    Token t = take();
    if (t.text.find('.') != std::string::npos) {
      double d = 0.0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
      if (ec != std::errc{}) {
        diags_.push_back(make_error("BadNumber", "cannot parse number '" + t.text + "'", t.span));
        return std::nullopt;
      }
      return Value{d};
    }
    std::int64_t n = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc{}) {
      diags_.push_back(make_error("BadNumber", "integer '" + t.text + "' out of range", t.span));
      return std::nullopt;
    }
    return Value{n};
  }

  // --- expression grammar -------------------------------------------------
  // or > and > comparison > additive > multiplicative > unary > primary,
  // all binary levels left-associative.

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at_punct("||")) {
      take();
      lhs = make_binary(BinaryOp::Or, std::move(lhs), parse_and());
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_cmp();
    while (at_punct("&&")) {
      take();
      lhs = make_binary(BinaryOp::And, std::move(lhs), parse_cmp());
    }
    return lhs;
  }

  ExprPtr parse_cmp() {
    ExprPtr lhs = parse_add();
    while (true) {
      BinaryOp op;
      if (at_punct("<")) op = BinaryOp::Lt;
      else if (at_punct("<=")) op = BinaryOp::Le;
      else if (at_punct(">")) op = BinaryOp::Gt;
      else if (at_punct(">=")) op = BinaryOp::Ge;
      else if (at_punct("==")) op = BinaryOp::Eq;
      else if (at_punct("!=")) op = BinaryOp::Ne;
      else return lhs;
      take();
      lhs = make_binary(op, std::move(lhs), parse_add());
    }
  }

  ExprPtr parse_add() {
    ExprPtr lhs = parse_mul();
    while (at_punct("+") || at_punct("-")) {
      BinaryOp op = at_punct("+") ? BinaryOp::Add : BinaryOp::Sub;
      take();
      lhs = make_binary(op, std::move(lhs), parse_mul());
    }
    return lhs;
  }

  ExprPtr parse_mul() {
    ExprPtr lhs = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      BinaryOp op = at_punct("*") ? BinaryOp::Mul : BinaryOp::Div;
      take();
      lhs = make_binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (accept_punct("!")) return make_unary(UnaryOp::Not, parse_unary());
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (cur().kind == TokenKind::Number) {
      auto v = parse_number_literal();
      return make_literal(v.value_or(Value{std::int64_t{0}}));
    }
    if (cur().kind == TokenKind::String) return make_literal(Value{take().text});
    if (accept_word("true")) return make_literal(Value{true});
    if (accept_word("false")) return make_literal(Value{false});
    if (accept_punct("(")) {
      ExprPtr inner = parse_expr();
      expect_punct(")", "to close the parenthesized expression");
      return inner;
    }
    for (auto [word, scope] : {std::pair{"event", FieldScope::Event},
                               std::pair{"state", FieldScope::State},
                               std::pair{"response", FieldScope::Response}}) {
      if (at_word(word)) {
        take();
        expect_punct(".", "after scope qualifier");
        auto name = expect_name("field name");
        return make_field_ref(scope, name ? name->text : "?");
      }
    }
    if (cur().kind == TokenKind::Identifier && !is_keyword(cur().text)) {
      return make_field_ref(FieldScope::Bare, take().text);
    }
    error_here("Syntax", "expected expression, found " + describe(cur()));
    return make_literal(Value{std::int64_t{0}});
  }

  std::string_view source_;
  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Diagnostics diags_;
};

// Converts a seconds-valued literal to milliseconds.
std::int64_t seconds_to_ms(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return std::llround(*d * 1000.0);
  return std::get<std::int64_t>(v) * 1000;
}

// --- domain spec ------------------------------------------------------------

class DomainParser : public Parser {
 public:
  using Parser::Parser;

  DomainSpec parse() {
    DomainSpec spec;
    expect_word("resources", "at the start of a domain spec");
    expect_punct("{", "after 'resources'");
    std::set<std::string> seen;
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      std::string section = cur().text;
      bool known = section == "structs" || section == "tags" || section == "periodicSensors" ||
                   section == "eventDrivenSensors" || section == "requestBasedSensors" ||
                   section == "actuators" || section == "storages";
      if (!known) {
        error_here("UnknownSection", "expected a resource section, found " + describe(cur()));
        synchronize();
        if (pos_ == before) take();
        continue;
      }
      if (!seen.insert(section).second) {
        error_here("DuplicateSection", "section '" + section + "' appears twice");
      }
      take();
      expect_punct("{", "after '" + section + "'");
      while (!at_end() && !at_punct("}")) {
        std::size_t inner = pos_;
        parse_decl(section, spec);
        if (pos_ == inner) take();
      }
      expect_punct("}", "to close '" + section + "'");
    }
    expect_punct("}", "to close 'resources'");
    if (!at_end()) error_here("Syntax", "unexpected input after 'resources' block");
    return spec;
  }

 private:
  void check_unique(DomainSpec& spec, const Token& name) {
    if (spec.has_resource(name.text) || spec.find_record(name.text)) {
      diags_.push_back(make_error("DuplicateResource",
                                  "name '" + name.text + "' is already declared", name.span));
    }
  }

  void parse_decl(const std::string& section, DomainSpec& spec) {
    auto name = expect_name(section == "structs" ? "record type name" : "resource name");
    if (!name) {
      synchronize();
      return;
    }
    check_unique(spec, *name);
    if (!expect_punct("{", "after '" + name->text + "'")) {
      synchronize();
      return;
    }
    if (section == "structs") {
      parse_record_body(spec, *name);
    } else if (section == "tags") {
      parse_tag_body(spec, *name);
    } else if (section == "actuators") {
      parse_actuator_body(spec, *name);
    } else {
      parse_resource_body(section, spec, *name);
    }
  }

  void parse_record_body(DomainSpec& spec, const Token& name) {
    RecordTypeDecl rec{name.text, {}, name.span};
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      auto field = expect_name("field name");
      if (field && expect_punct(":", "after field name")) {
        if (auto type = parse_field_type()) {
          if (rec.find_field(field->text)) {
            diags_.push_back(make_error(
                "DuplicateField", "field '" + field->text + "' is already declared", field->span));
          } else {
            rec.fields.push_back(FieldDecl{field->text, *type});
          }
          expect_punct(";", "after field declaration");
        } else {
          synchronize();
        }
      } else {
        synchronize();
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name.text + "'");
    spec.records.push_back(std::move(rec));
  }

  std::optional<EventDecl> parse_generate() {
    take();  // 'generate'
    auto ev = expect_name("event name");
    if (!ev || !expect_punct(":", "after event name")) {
      synchronize();
      return std::nullopt;
    }
    auto type = expect_name("record type name");
    if (!type) {
      synchronize();
      return std::nullopt;
    }
    expect_punct(";", "after 'generate' declaration");
    return EventDecl{ev->text, type->text};
  }

  std::optional<AccessKey> parse_accessed_by() {
    take();  // 'accessed'
    expect_punct("-", "in 'accessed-by'");
    expect_word("by", "in 'accessed-by'");
    auto key = expect_name("access key name");
    if (!key || !expect_punct(":", "after access key name")) {
      synchronize();
      return std::nullopt;
    }
    auto type = parse_field_type();
    if (!type) {
      synchronize();
      return std::nullopt;
    }
    expect_punct(";", "after 'accessed-by' declaration");
    return AccessKey{key->text, *type};
  }

  void parse_tag_body(DomainSpec& spec, const Token& name) {
    TagDecl tag{name.text, {}, name.span};
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      if (at_word("generate")) {
        if (auto ev = parse_generate()) tag.generates.push_back(std::move(*ev));
      } else {
        error_here("Syntax", "expected 'generate' in tag body, found " + describe(cur()));
        synchronize();
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name.text + "'");
    if (tag.generates.empty()) {
      diags_.push_back(make_error("MissingGenerate",
                                  "tag '" + name.text + "' declares no events", name.span));
    }
    spec.tags.push_back(std::move(tag));
  }

  void parse_actuator_body(DomainSpec& spec, const Token& name) {
    ActuatorDecl act{name.text, {}, name.span};
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      if (at_word("action")) {
        take();
        auto an = expect_name("action name");
        if (an && expect_punct("(", "after action name")) {
          ActionDecl action{an->text, {}};
          bool dup = act.find_action(an->text) != nullptr;
          if (dup) {
            diags_.push_back(make_error(
                "DuplicateAction", "action '" + an->text + "' is already declared", an->span));
          }
          if (!at_punct(")")) {
            do {
              auto pn = expect_name("parameter name");
              if (!pn || !expect_punct(":", "after parameter name")) break;
              auto pt = parse_field_type();
              if (!pt) break;
              action.params.push_back(FieldDecl{pn->text, *pt});
            } while (accept_punct(","));
          }
          expect_punct(")", "to close the parameter list");
          expect_punct(";", "after 'action' declaration");
          if (!dup) act.actions.push_back(std::move(action));
        } else {
          synchronize();
        }
      } else {
        error_here("Syntax", "expected 'action' in actuator body, found " + describe(cur()));
        synchronize();
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name.text + "'");
    spec.actuators.push_back(std::move(act));
  }

  // Shared by the three sensor sections and storages: one generate plus a
  // kind-specific clause, in any order.
  void parse_resource_body(const std::string& section, DomainSpec& spec, const Token& name) {
    std::vector<EventDecl> generates;
    std::optional<std::pair<std::int64_t, std::int64_t>> sample;
    ExprPtr condition;
    std::optional<AccessKey> accessKey;
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      if (at_word("generate")) {
        if (auto ev = parse_generate()) generates.push_back(std::move(*ev));
      } else if (at_word("sample")) {
        take();
        expect_word("period", "after 'sample'");
        std::optional<Value> d, k;
        if (cur().kind == TokenKind::Number) d = parse_number_literal();
        else error_here("Syntax", "expected sampling period, found " + describe(cur()));
        expect_word("for", "after sampling period");
        if (cur().kind == TokenKind::Number) k = parse_number_literal();
        else error_here("Syntax", "expected sampling duration, found " + describe(cur()));
        expect_punct(";", "after 'sample' declaration");
        if (d && k) {
          auto dm = seconds_to_ms(*d);
          auto km = seconds_to_ms(*k);
          if (dm <= 0 || km <= 0) {
            diags_.push_back(make_error("BadPeriod",
                                        "sampling period and duration must be positive",
                                        name.span));
          } else {
            sample = {dm, km};
          }
        }
      } else if (at_word("onCondition")) {
        take();
        condition = parse_expr();
        expect_punct(";", "after 'onCondition' expression");
      } else if (at_word("accessed")) {
        if (auto key = parse_accessed_by()) accessKey = std::move(*key);
      } else {
        error_here("Syntax", "unexpected " + describe(cur()) + " in '" + name.text + "'");
        synchronize();
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name.text + "'");

    if (generates.empty()) {
      diags_.push_back(make_error("MissingGenerate",
                                  "'" + name.text + "' declares no generated event", name.span));
      return;
    }
    if (generates.size() > 1) {
      diags_.push_back(make_error("MultipleGenerate",
                                  "'" + name.text + "' may declare only one generated event",
                                  name.span));
    }

    if (section == "storages") {
      if (!accessKey) {
        diags_.push_back(make_error(
            "MissingAccessKey", "storage '" + name.text + "' needs 'accessed-by'", name.span));
        return;
      }
      spec.storages.push_back(StorageDecl{name.text, generates[0], *accessKey, name.span});
      return;
    }

    SensorDecl sensor;
    sensor.name = name.text;
    sensor.generates = generates[0];
    sensor.span = name.span;
    if (section == "periodicSensors") {
      sensor.kind = SensorKind::Periodic;
      if (!sample) {
        diags_.push_back(make_error(
            "MissingSample", "periodic sensor '" + name.text + "' needs 'sample period … for …'",
            name.span));
        return;
      }
      sensor.samplePeriodMs = sample->first;
      sensor.durationMs = sample->second;
    } else if (section == "eventDrivenSensors") {
      sensor.kind = SensorKind::EventDriven;
      if (!condition) {
        diags_.push_back(make_error(
            "MissingCondition", "event-driven sensor '" + name.text + "' needs 'onCondition'",
            name.span));
        return;
      }
      sensor.condition = std::move(condition);
    } else {
      sensor.kind = SensorKind::RequestBased;
      if (!accessKey) {
        diags_.push_back(make_error(
            "MissingAccessKey", "request-based sensor '" + name.text + "' needs 'accessed-by'",
            name.span));
        return;
      }
      sensor.accessKey = *accessKey;
    }
    spec.sensors.push_back(std::move(sensor));
  }
};

// --- architecture spec -------------------------------------------------------

class ArchParser : public Parser {
 public:
  using Parser::Parser;

  ArchitectureSpec parse() {
    ArchitectureSpec spec;
    expect_word("computationalServices", "at the start of an architecture spec");
    expect_punct("{", "after 'computationalServices'");
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      parse_service(spec);
      if (pos_ == before) take();
    }
    expect_punct("}", "to close 'computationalServices'");
    if (!at_end()) error_here("Syntax", "unexpected input after 'computationalServices' block");
    return spec;
  }

 private:
  void parse_service(ArchitectureSpec& spec) {
    ServiceKind kind;
    if (accept_word("Common")) {
      kind = ServiceKind::Common;
    } else if (accept_word("Custom")) {
      kind = ServiceKind::Custom;
    } else {
      error_here("Syntax", "expected 'Common' or 'Custom', found " + describe(cur()));
      synchronize();
      return;
    }
    auto name = expect_name("service name");
    if (!name || !expect_punct("{", "after service name")) {
      synchronize();
      return;
    }
    if (spec.find_service(name->text)) {
      diags_.push_back(make_error("DuplicateService",
                                  "service '" + name->text + "' is already declared", name->span));
    }

    ServiceDecl svc;
    svc.name = name->text;
    svc.kind = kind;
    svc.span = name->span;
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      if (kind == ServiceKind::Common && (at_word("request") || at_word("command"))) {
        error_here("CommonServiceItem",
                   "Common services aggregate only; '" + cur().text +
                       "' needs a Custom service");
        synchronize();
      } else {
        parse_item(svc);
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name->text + "'");

    if (kind == ServiceKind::Common && !svc.computes) {
      diags_.push_back(make_error(
          "MissingCompute", "Common service '" + svc.name + "' needs a COMPUTE clause",
          name->span));
    }
    if (kind == ServiceKind::Custom && svc.computes) {
      diags_.push_back(make_error(
          "UnexpectedCompute", "Custom service '" + svc.name + "' cannot have a COMPUTE clause",
          name->span));
    }
    spec.services.push_back(std::move(svc));
  }

  void parse_item(ServiceDecl& svc) {
    if (at_word("consume")) {
      take();
      auto ev = expect_name("event name");
      if (!ev) {
        synchronize();
        return;
      }
      ConsumeDecl c{ev->text, ConsumeScope::SameLocation};
      if (accept_word("from")) {
        if (!accept_word("global")) {
          error_here("Syntax", "expected 'global' after 'from', found " + describe(cur()));
        } else {
          c.scope = ConsumeScope::Global;
        }
      }
      expect_punct(";", "after 'consume' declaration");
      svc.consumes.push_back(std::move(c));
    } else if (at_word("COMPUTE")) {
      Token kw = take();
      ComputeSpec cs;
      if (accept_word("AVG_BY_SAMPLE")) cs.op = ComputeOp::AvgBySample;
      else if (accept_word("SUM_BY_SAMPLE")) cs.op = ComputeOp::SumBySample;
      else if (accept_word("COUNT_BY_SAMPLE")) cs.op = ComputeOp::CountBySample;
      else {
        error_here("Syntax", "expected a COMPUTE operator, found " + describe(cur()));
        synchronize();
        return;
      }
      expect_punct("(", "after the COMPUTE operator");
      if (cur().kind == TokenKind::Number && cur().text.find('.') == std::string::npos) {
        auto v = parse_number_literal();
        cs.windowSize = v ? static_cast<int>(std::get<std::int64_t>(*v)) : 0;
      } else {
        error_here("BadWindow", "expected an integer window size, found " + describe(cur()));
      }
      expect_punct(")", "after the window size");
      expect_word("on", "after the COMPUTE window");
      auto field = expect_name("field name");
      expect_punct(";", "after COMPUTE clause");
      if (cs.windowSize <= 0) {
        diags_.push_back(make_error("BadWindow", "window size must be positive", kw.span));
        return;
      }
      if (field) cs.field = field->text;
      if (svc.computes) {
        diags_.push_back(
            make_error("DuplicateCompute", "service has two COMPUTE clauses", kw.span));
        return;
      }
      svc.computes = std::move(cs);
    } else if (at_word("request")) {
      take();
      expect_word("to", "after 'request'");
      auto target = expect_name("request target");
      expect_punct(";", "after 'request' declaration");
      if (target) svc.requests.push_back(target->text);
    } else if (at_word("generate")) {
      take();
      auto ev = expect_name("event name");
      if (ev && expect_punct(":", "after event name")) {
        auto type = expect_name("record type name");
        expect_punct(";", "after 'generate' declaration");
        if (type) svc.generates.push_back(EventDecl{ev->text, type->text});
      } else {
        synchronize();
      }
    } else if (at_word("command")) {
      take();
      auto action = expect_name("action name");
      if (!action || !expect_punct("(", "after action name")) {
        synchronize();
        return;
      }
      CommandDecl cmd;
      cmd.action = action->text;
      if (!at_punct(")")) {
        do {
          auto pn = expect_name("parameter name");
          if (!pn || !expect_punct("=", "after parameter name")) break;
          ArgBinding arg;
          arg.param = pn->text;
          if (cur().kind == TokenKind::Number) {
            arg.literal = parse_number_literal();
          } else if (cur().kind == TokenKind::String) {
            arg.literal = Value{take().text};
          } else if (accept_word("true")) {
            arg.literal = Value{true};
          } else if (accept_word("false")) {
            arg.literal = Value{false};
          } else if (auto fn = expect_name("field name or literal")) {
            arg.field = fn->text;
          } else {
            break;
          }
          cmd.args.push_back(std::move(arg));
        } while (accept_punct(","));
      }
      expect_punct(")", "to close the argument list");
      expect_word("to", "after the argument list");
      auto act = expect_name("actuator name");
      expect_punct(";", "after 'command' declaration");
      if (act) {
        cmd.actuator = act->text;
        svc.commands.push_back(std::move(cmd));
      }
    } else {
      error_here("Syntax", "unexpected " + describe(cur()) + " in service body");
      synchronize();
    }
  }
};

// --- user-interaction spec ----------------------------------------------------

class UiParser : public Parser {
 public:
  using Parser::Parser;

  UserInteractionSpec parse() {
    UserInteractionSpec spec;
    expect_word("userInteractions", "at the start of a user-interaction spec");
    expect_punct("{", "after 'userInteractions'");
    bool sawStructs = false;
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      if (at_word("structs")) {
        if (sawStructs) error_here("DuplicateSection", "section 'structs' appears twice");
        sawStructs = true;
        take();
        expect_punct("{", "after 'structs'");
        while (!at_end() && !at_punct("}")) {
          std::size_t inner = pos_;
          parse_record(spec);
          if (pos_ == inner) take();
        }
        expect_punct("}", "to close 'structs'");
      } else if (at_word("notify")) {
        take();
        auto name = expect_name("interactor name");
        if (name && expect_punct("(", "after interactor name")) {
          auto ev = expect_name("event name");
          if (ev && expect_punct(":", "after event name")) {
            auto type = expect_name("record type name");
            expect_punct(")", "to close the notify payload");
            expect_punct(";", "after 'notify' declaration");
            if (type) {
              if (spec.find_interactor(name->text)) {
                diags_.push_back(make_error("DuplicateInteractor",
                                            "interactor '" + name->text + "' is already declared",
                                            name->span));
              } else {
                spec.interactors.push_back(
                    InteractorDecl{name->text, EventDecl{ev->text, type->text}, name->span});
              }
            }
          } else {
            synchronize();
          }
        } else {
          synchronize();
        }
      } else {
        error_here("Syntax", "expected 'structs' or 'notify', found " + describe(cur()));
        synchronize();
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close 'userInteractions'");
    if (!at_end()) error_here("Syntax", "unexpected input after 'userInteractions' block");
    return spec;
  }

 private:
  void parse_record(UserInteractionSpec& spec) {
    auto name = expect_name("record type name");
    if (!name || !expect_punct("{", "after '" + (name ? name->text : std::string("?")) + "'")) {
      synchronize();
      return;
    }
    RecordTypeDecl rec{name->text, {}, name->span};
    if (spec.find_record(name->text)) {
      diags_.push_back(make_error("DuplicateRecord",
                                  "record '" + name->text + "' is already declared", name->span));
    }
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      auto field = expect_name("field name");
      if (field && expect_punct(":", "after field name")) {
        if (auto type = parse_field_type()) {
          rec.fields.push_back(FieldDecl{field->text, *type});
          expect_punct(";", "after field declaration");
        } else {
          synchronize();
        }
      } else {
        synchronize();
      }
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name->text + "'");
    spec.records.push_back(std::move(rec));
  }
};

// --- deployment spec -----------------------------------------------------------

class DeployParser : public Parser {
 public:
  using Parser::Parser;

  DeploymentSpec parse() {
    DeploymentSpec spec;
    expect_word("devices", "at the start of a deployment spec");
    expect_punct("{", "after 'devices'");
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      parse_device(spec);
      if (pos_ == before) take();
    }
    expect_punct("}", "to close 'devices'");
    if (!at_end()) error_here("Syntax", "unexpected input after 'devices' block");
    return spec;
  }

 private:
  // Attribute values are identifiers or quoted strings; locations must be
  // quoted because region paths contain '/'.
  std::optional<std::string> parse_attr_value() {
    if (cur().kind == TokenKind::String) return take().text;
    if (cur().kind == TokenKind::Identifier && !is_keyword(cur().text)) return take().text;
    error_here("Syntax", "expected an identifier or string value, found " + describe(cur()));
    return std::nullopt;
  }

  void parse_device(DeploymentSpec& spec) {
    auto name = expect_name("device name");
    if (!name || !expect_punct("{", "after device name")) {
      synchronize();
      return;
    }
    if (spec.find_device(name->text)) {
      diags_.push_back(make_error("DuplicateDevice",
                                  "device '" + name->text + "' is already declared", name->span));
    }
    DeviceDecl dev;
    dev.name = name->text;
    dev.span = name->span;
    std::set<std::string> seen;
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      std::string attr;
      if (at_word("location") || at_word("resources") || at_word("protocol") ||
          at_word("database")) {
        attr = take().text;
      } else if (at_word("language")) {
        take();
        expect_punct("-", "in 'language-platform'");
        expect_word("platform", "in 'language-platform'");
        attr = "language-platform";
      } else {
        error_here("Syntax", "expected a device attribute, found " + describe(cur()));
        synchronize();
        if (pos_ == before) take();
        continue;
      }
      if (!seen.insert(attr).second) {
        diags_.push_back(make_error("DuplicateAttribute",
                                    "attribute '" + attr + "' appears twice", cur().span));
      }
      expect_punct(":", "after '" + attr + "'");
      if (attr == "location") {
        if (cur().kind == TokenKind::String) {
          dev.location = take().text;
        } else {
          error_here("Syntax", "expected a quoted region path, found " + describe(cur()));
        }
      } else if (attr == "resources") {
        do {
          if (auto rn = expect_name("resource name")) dev.resources.push_back(rn->text);
          else break;
        } while (accept_punct(","));
      } else if (attr == "language-platform") {
        if (auto v = parse_attr_value()) dev.platform = *v;
      } else if (attr == "protocol") {
        if (auto v = parse_attr_value()) dev.protocol = *v;
      } else {
        if (auto v = parse_attr_value()) dev.database = *v;
      }
      expect_punct(";", "after '" + attr + "' attribute");
      if (pos_ == before) take();
    }
    expect_punct("}", "to close '" + name->text + "'");
    if (dev.location.empty()) {
      diags_.push_back(make_error("MissingLocation",
                                  "device '" + dev.name + "' needs a location", name->span));
    }
    if (dev.protocol.empty()) {
      diags_.push_back(make_error("MissingProtocol",
                                  "device '" + dev.name + "' needs a protocol", name->span));
    }
    spec.devices.push_back(std::move(dev));
  }
};

// --- logic rules -----------------------------------------------------------------

class RulesParser : public Parser {
 public:
  using Parser::Parser;

  LogicRuleSet parse() {
    LogicRuleSet set;
    while (!at_end()) {
      std::size_t before = pos_;
      if (at_word("service")) {
        parse_service_block(set);
      } else {
        error_here("Syntax", "expected 'service', found " + describe(cur()));
        synchronize();
      }
      if (pos_ == before) take();
    }
    return set;
  }

 private:
  void parse_service_block(LogicRuleSet& set) {
    Token kw = take();  // 'service'
    auto name = expect_name("service name");
    if (!name || !expect_punct("{", "after service name")) {
      synchronize();
      return;
    }
    if (set.find_service(name->text)) {
      diags_.push_back(make_error("DuplicateRuleBlock",
                                  "rules for '" + name->text + "' are already declared",
                                  name->span));
    }
    ServiceRules block;
    block.service = name->text;
    block.span = name->span;
    while (!at_end() && !at_punct("}")) {
      std::size_t before = pos_;
      if (at_word("on")) {
        parse_rule(block);
      } else {
        error_here("Syntax", "expected 'on', found " + describe(cur()));
        synchronize();
      }
      if (pos_ == before) take();
    }
    std::size_t endOffset = source_.size();
    if (at_punct("}")) endOffset = cur().offset + 1;
    expect_punct("}", "to close rules for '" + name->text + "'");
    block.sourceText = std::string(source_.substr(kw.offset, endOffset - kw.offset));
    set.services.push_back(std::move(block));
  }

  void parse_rule(ServiceRules& block) {
    Token kw = take();  // 'on'
    LogicRule rule;
    rule.span = kw.span;
    rule.trigger.onResponse = accept_word("response");
    auto ev = expect_name("event name");
    if (!ev) {
      synchronize();
      return;
    }
    rule.trigger.event = ev->text;
    if (accept_word("when")) rule.trigger.guard = parse_expr();
    if (!expect_punct("->", "before the rule actions")) {
      synchronize();
      return;
    }
    do {
      if (auto action = parse_action()) {
        rule.actions.push_back(std::move(*action));
      } else {
        synchronize();
        return;
      }
    } while (accept_punct(","));
    expect_punct(";", "after the rule actions");
    block.rules.push_back(std::move(rule));
  }

  std::optional<std::vector<Assignment>> parse_assignments(std::string_view context) {
    if (!expect_punct("(", context)) return std::nullopt;
    std::vector<Assignment> out;
    if (!at_punct(")")) {
      do {
        auto fn = expect_name("field name");
        if (!fn || !expect_punct("=", "after field name")) return std::nullopt;
        out.push_back(Assignment{fn->text, parse_expr()});
      } while (accept_punct(","));
    }
    expect_punct(")", "to close the assignment list");
    return out;
  }

  std::optional<RuleAction> parse_action() {
    if (accept_word("emit")) {
      auto ev = expect_name("event name");
      if (!ev) return std::nullopt;
      auto assigns = parse_assignments("after the emitted event name");
      if (!assigns) return std::nullopt;
      return RuleAction{EmitAction{ev->text, std::move(*assigns)}};
    }
    if (accept_word("command")) {
      auto act = expect_name("actuator name");
      if (!act || !expect_punct(".", "between actuator and action")) return std::nullopt;
      auto an = expect_name("action name");
      if (!an) return std::nullopt;
      auto args = parse_assignments("after the action name");
      if (!args) return std::nullopt;
      return RuleAction{CommandAction{act->text, an->text, std::move(*args)}};
    }
    if (accept_word("request")) {
      auto target = expect_name("request target");
      if (!target || !expect_punct("(", "after the request target")) return std::nullopt;
      ExprPtr key = parse_expr();
      expect_punct(")", "to close the request key");
      return RuleAction{RequestAction{target->text, std::move(key)}};
    }
    if (accept_word("notify")) {
      auto in = expect_name("interactor name");
      if (!in) return std::nullopt;
      auto assigns = parse_assignments("after the interactor name");
      if (!assigns) return std::nullopt;
      return RuleAction{NotifyAction{in->text, std::move(*assigns)}};
    }
    if (accept_word("set")) {
      auto field = expect_name("state field name");
      if (!field || !expect_punct("=", "after the state field")) return std::nullopt;
      return RuleAction{SetStateAction{field->text, parse_expr()}};
    }
    error_here("Syntax", "expected a rule action, found " + describe(cur()));
    return std::nullopt;
  }
};

class ExprTextParser : public Parser {
 public:
  using Parser::Parser;

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    if (!at_end()) error_here("Syntax", "unexpected input after the expression");
    return e;
  }
};

}  // namespace

ParseResult<DomainSpec> parse_domain(std::string_view source, const std::string& file) {
  DomainParser p(source, file);
  ParseResult<DomainSpec> r;
  r.value = p.parse();
  r.diags = p.take_diags();
  sort_diagnostics(r.diags);
  return r;
}

ParseResult<ArchitectureSpec> parse_architecture(std::string_view source, const std::string& file) {
  ArchParser p(source, file);
  ParseResult<ArchitectureSpec> r;
  r.value = p.parse();
  r.diags = p.take_diags();
  sort_diagnostics(r.diags);
  return r;
}

ParseResult<UserInteractionSpec> parse_user_interaction(std::string_view source,
                                                        const std::string& file) {
  UiParser p(source, file);
  ParseResult<UserInteractionSpec> r;
  r.value = p.parse();
  r.diags = p.take_diags();
  sort_diagnostics(r.diags);
  return r;
}

ParseResult<DeploymentSpec> parse_deployment(std::string_view source, const std::string& file) {
  DeployParser p(source, file);
  ParseResult<DeploymentSpec> r;
  r.value = p.parse();
  r.diags = p.take_diags();
  sort_diagnostics(r.diags);
  return r;
}

ParseResult<LogicRuleSet> parse_logic_rules(std::string_view source, const std::string& file) {
  RulesParser p(source, file);
  ParseResult<LogicRuleSet> r;
  r.value = p.parse();
  r.diags = p.take_diags();
  sort_diagnostics(r.diags);
  return r;
}

ParseResult<ExprPtr> parse_expr_text(std::string_view source, const std::string& file) {
  ExprTextParser p(source, file);
  ParseResult<ExprPtr> r;
  r.value = p.parse();
  r.diags = p.take_diags();
  sort_diagnostics(r.diags);
  return r;
}

}  // namespace iotforge
