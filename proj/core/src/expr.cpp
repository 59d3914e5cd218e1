#include "iotforge/expr.hpp"

#include <array>
#include <cassert>
#include <charconv>

namespace iotforge {

ValueType type_of(const Value& v) {
  switch (v.index()) {
    case 0: return ValueType::Double;
    case 1: return ValueType::Long;
    case 2: return ValueType::String;
    default: return ValueType::Bool;
  }
}

std::string to_string(ValueType t) {
  switch (t) {
    case ValueType::Double: return "double";
    case ValueType::Long: return "long";
    case ValueType::String: return "String";
    case ValueType::Bool: return "bool";
  }
  return "?";
}

static std::string format_double(double d) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  assert(ec == std::errc());
  std::string s(buf.data(), end);
  // A bare integer rendering would re-parse as a long literal.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string format_value(const Value& v) {
  switch (v.index()) {
    case 0: return format_double(std::get<double>(v));
    case 1: return std::to_string(std::get<std::int64_t>(v));
    case 2: {
      std::string out = "\"";
      for (char c : std::get<std::string>(v)) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out += c;
        }
      }
      out += '"';
      return out;
    }
    default: return std::get<bool>(v) ? "true" : "false";
  }
}

ExprPtr make_literal(Value v) {
  return std::make_shared<Expr>(Expr{Expr::Literal{std::move(v)}});
}

ExprPtr make_field_ref(FieldScope scope, std::string field) {
  return std::make_shared<Expr>(Expr{Expr::FieldRef{scope, std::move(field)}});
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
  return std::make_shared<Expr>(Expr{Expr::Unary{op, std::move(operand)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}});
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;

  if (const auto* la = std::get_if<Expr::Literal>(&a->node)) {
    return la->value == std::get<Expr::Literal>(b->node).value;
  }
  if (const auto* fa = std::get_if<Expr::FieldRef>(&a->node)) {
    const auto& fb = std::get<Expr::FieldRef>(b->node);
    return fa->scope == fb.scope && fa->field == fb.field;
  }
  if (const auto* ua = std::get_if<Expr::Unary>(&a->node)) {
    const auto& ub = std::get<Expr::Unary>(b->node);
    return ua->op == ub.op && same_expr(ua->operand, ub.operand);
  }
  const auto& ba = std::get<Expr::Binary>(a->node);
  const auto& bb = std::get<Expr::Binary>(b->node);
  return ba.op == bb.op && same_expr(ba.lhs, bb.lhs) && same_expr(ba.rhs, bb.rhs);
}

const char* binary_op_token(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

// Binding strength, mirroring the parser: || < && < comparisons < +- < */ < !
static int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 4;
    case BinaryOp::Mul:
    case BinaryOp::Div: return 5;
  }
  return 0;
}

// `parent` is the precedence of the context; `rightChild` marks the right
// operand of a left-associative operator, which needs parens at equal
// precedence.
static void print_expr(const ExprPtr& e, int parent, bool rightChild, std::string& out) {
  if (const auto* lit = std::get_if<Expr::Literal>(&e->node)) {
    out += format_value(lit->value);
    return;
  }
  if (const auto* ref = std::get_if<Expr::FieldRef>(&e->node)) {
    switch (ref->scope) {
      case FieldScope::Bare: break;
      case FieldScope::Event: out += "event."; break;
      case FieldScope::State: out += "state."; break;
      case FieldScope::Response: out += "response."; break;
    }
    out += ref->field;
    return;
  }
  if (const auto* un = std::get_if<Expr::Unary>(&e->node)) {
    out += '!';
    print_expr(un->operand, 6, false, out);
    return;
  }

  const auto& bin = std::get<Expr::Binary>(e->node);
  int prec = precedence(bin.op);
  bool parens = prec < parent || (prec == parent && rightChild);
  if (parens) out += '(';
  print_expr(bin.lhs, prec, false, out);
  out += ' ';
  out += binary_op_token(bin.op);
  out += ' ';
  print_expr(bin.rhs, prec + 0, true, out);
  if (parens) out += ')';
}

std::string format_expr(const ExprPtr& e) {
  std::string out;
  if (e) print_expr(e, 0, false, out);
  return out;
}

}  // namespace iotforge
