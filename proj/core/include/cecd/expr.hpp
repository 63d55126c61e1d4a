#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>

namespace cecd {

enum class UnaryOp { Neg, Not };

enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

// Immutable expression tree. Nodes are shared freely; nothing mutates them
// after construction, so copies of programs can alias subtrees.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
  enum class Kind { Literal, Variable, Unary, Binary };

  static ExprPtr literal(std::int64_t v);
  static ExprPtr variable(std::string name);
  static ExprPtr unary(UnaryOp op, ExprPtr operand);
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

  Kind kind() const { return kind_; }
  std::int64_t value() const { return value_; }
  const std::string& name() const { return name_; }
  UnaryOp unary_op() const { return uop_; }
  BinaryOp binary_op() const { return bop_; }
  const ExprPtr& lhs() const { return lhs_; }
  const ExprPtr& rhs() const { return rhs_; }

private:
  Kind kind_;
  std::int64_t value_ = 0;
  std::string name_;
  UnaryOp uop_ = UnaryOp::Neg;
  BinaryOp bop_ = BinaryOp::Add;
  ExprPtr lhs_;
  ExprPtr rhs_;

  explicit Expr(Kind k) : kind_(k) {}
  friend struct ExprFactory;
};

// Structural equality; variable names compare as strings.
bool expr_eq(const Expr& a, const Expr& b);
bool expr_eq(const ExprPtr& a, const ExprPtr& b);

// All variable names appearing in e, deduplicated.
std::set<std::string> operands_of(const Expr& e);
std::set<std::string> operands_of(const ExprPtr& e);

// Renders with minimal parentheses; reparsing yields a structurally
// identical tree for any expression the parser can produce.
std::string to_string(const Expr& e);
std::string to_string(const ExprPtr& e);

const char* spelling(UnaryOp op);
const char* spelling(BinaryOp op);

} // namespace cecd
