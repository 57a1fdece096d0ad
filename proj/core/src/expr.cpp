#include "odesurf/expr.hpp"

#include <cmath>
#include <utility>

#include "odesurf/errors.hpp"

namespace odesurf {

struct Expr::Node {
  Kind kind;
  double value = 0.0;              // Constant
  Var var = Var::X;                // Variable
  UnaryOp uop = UnaryOp::Neg;      // Unary
  BinaryOp bop = BinaryOp::Add;    // Binary
  std::shared_ptr<const Node> a;   // unary child / binary left
  std::shared_ptr<const Node> b;   // binary right
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw Error("Expr::constant: value must be finite");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = v;
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->a = std::move(child.node_);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->a = std::move(left.node_);
  n->b = std::move(right.node_);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
Var Expr::var() const { return node_->var; }
UnaryOp Expr::unary_op() const { return node_->uop; }
BinaryOp Expr::binary_op() const { return node_->bop; }
Expr Expr::child() const { return Expr(node_->a); }
Expr Expr::left() const { return Expr(node_->a); }
Expr Expr::right() const { return Expr(node_->b); }

bool Expr::is_constant(double value) const {
  return node_->kind == Kind::Constant && node_->value == value;
}

int compare(const Expr& a, const Expr& b) {
  auto rank = [](const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Constant: return 0;
      case Expr::Kind::Variable: return 1;
      case Expr::Kind::Unary: return 2;
      case Expr::Kind::Binary: return 3;
    }
    return 4;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::Constant: {
      double va = a.constant_value(), vb = b.constant_value();
      if (va < vb) return -1;
      if (va > vb) return 1;
      return 0;
    }
    case Expr::Kind::Variable:
      if (a.var() == b.var()) return 0;
      return a.var() == Var::X ? -1 : 1;
    case Expr::Kind::Unary: {
      if (a.unary_op() != b.unary_op())
        return static_cast<int>(a.unary_op()) < static_cast<int>(b.unary_op()) ? -1 : 1;
      return compare(a.child(), b.child());
    }
    case Expr::Kind::Binary: {
      if (a.binary_op() != b.binary_op())
        return static_cast<int>(a.binary_op()) < static_cast<int>(b.binary_op()) ? -1 : 1;
      if (int c = compare(a.left(), b.left())) return c;
      return compare(a.right(), b.right());
    }
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

}  // namespace odesurf
