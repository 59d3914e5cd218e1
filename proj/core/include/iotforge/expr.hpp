#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace iotforge {

// Runtime/literal value. The four value kinds the languages know about;
// record fields are restricted to the first three.
using Value = std::variant<double, std::int64_t, std::string, bool>;

enum class ValueType { Double, Long, String, Bool };

ValueType type_of(const Value& v);
std::string to_string(ValueType t);

// Renders a value the way the expression grammar would spell it. Doubles
// always carry a decimal point (or exponent) so they re-parse as doubles.
std::string format_value(const Value& v);

enum class BinaryOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnaryOp { Not };

// Which record a field reference reads from. Bare references appear in
// sensor onCondition expressions; the qualified forms appear in rules.
enum class FieldScope { Bare, Event, State, Response };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Literal {
    Value value;
  };
  struct FieldRef {
    FieldScope scope = FieldScope::Bare;
    std::string field;
  };
  struct Unary {
    UnaryOp op;
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };

  std::variant<Literal, FieldRef, Unary, Binary> node;
};

ExprPtr make_literal(Value v);
ExprPtr make_field_ref(FieldScope scope, std::string field);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

bool same_expr(const ExprPtr& a, const ExprPtr& b);

// Canonical text with minimal parentheses; format_expr(parse(format_expr(e)))
// is the identity.
std::string format_expr(const ExprPtr& e);

const char* binary_op_token(BinaryOp op);

}  // namespace iotforge
