#include "cecd/expr.hpp"

#include <utility>

namespace cecd {

struct ExprFactory {
  static std::shared_ptr<Expr> make(Expr::Kind k) {
    return std::shared_ptr<Expr>(new Expr(k));
  }
};

ExprPtr Expr::literal(std::int64_t v) {
  auto e = ExprFactory::make(Kind::Literal);
  e->value_ = v;
  return e;
}

ExprPtr Expr::variable(std::string name) {
  auto e = ExprFactory::make(Kind::Variable);
  e->name_ = std::move(name);
  return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr operand) {
  auto e = ExprFactory::make(Kind::Unary);
  e->uop_ = op;
  e->lhs_ = std::move(operand);
  return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = ExprFactory::make(Kind::Binary);
  e->bop_ = op;
  e->lhs_ = std::move(lhs);
  e->rhs_ = std::move(rhs);
  return e;
}

bool expr_eq(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Literal: return a.value() == b.value();
    case Expr::Kind::Variable: return a.name() == b.name();
    case Expr::Kind::Unary:
      return a.unary_op() == b.unary_op() && expr_eq(*a.lhs(), *b.lhs());
    case Expr::Kind::Binary:
      return a.binary_op() == b.binary_op() && expr_eq(*a.lhs(), *b.lhs()) &&
             expr_eq(*a.rhs(), *b.rhs());
  }
  return false;
}

bool expr_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return expr_eq(*a, *b);
}

static void collect_operands(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::Literal: return;
    case Expr::Kind::Variable: out.insert(e.name()); return;
    case Expr::Kind::Unary: collect_operands(*e.lhs(), out); return;
    case Expr::Kind::Binary:
      collect_operands(*e.lhs(), out);
      collect_operands(*e.rhs(), out);
      return;
  }
}

std::set<std::string> operands_of(const Expr& e) {
  std::set<std::string> out;
  collect_operands(e, out);
  return out;
}

std::set<std::string> operands_of(const ExprPtr& e) { return operands_of(*e); }

const char* spelling(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

// Precedence levels, higher binds tighter. All binary operators associate
// to the left, so a right child at equal precedence needs parentheses.
static int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul: return 6;
  }
  return 0;
}

static constexpr int kUnaryPrec = 7;

static void render(const Expr& e, int parent_prec, bool right_side, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Literal:
      out += std::to_string(e.value());
      return;
    case Expr::Kind::Variable:
      out += e.name();
      return;
    case Expr::Kind::Unary: {
      out += spelling(e.unary_op());
      render(*e.lhs(), kUnaryPrec, false, out);
      return;
    }
    case Expr::Kind::Binary: {
      int prec = precedence(e.binary_op());
      bool need_parens = prec < parent_prec || (prec == parent_prec && right_side);
      if (need_parens) out += '(';
      render(*e.lhs(), prec, false, out);
      out += ' ';
      out += spelling(e.binary_op());
      out += ' ';
      render(*e.rhs(), prec, true, out);
      if (need_parens) out += ')';
      return;
    }
  }
}

std::string to_string(const Expr& e) {
  std::string out;
  render(e, 0, false, out);
  return out;
}

std::string to_string(const ExprPtr& e) { return to_string(*e); }

} // namespace cecd
