#include <cmath>
#include <cstdio>
#include <string>

#include "odesurf/expr.hpp"

namespace odesurf {

namespace {

// Grammar levels: 0 expr (add/sub), 1 term (mul/div), 2 factor (pow and
// unary minus), 3 base (atoms, function calls).  Negative literals print
// with a leading '-', so they sit at the factor level too.
int level(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 0;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 1;
        case BinaryOp::Pow: return 2;
      }
      return 0;
    case Expr::Kind::Constant:
      return std::signbit(e.constant_value()) ? 2 : 3;
    case Expr::Kind::Unary:
      return e.unary_op() == UnaryOp::Neg ? 2 : 3;
    default:
      return 3;
  }
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* function_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Tan: return "tan";
    case UnaryOp::Cot: return "cot";
    case UnaryOp::Sinh: return "sinh";
    case UnaryOp::Cosh: return "cosh";
    case UnaryOp::Tanh: return "tanh";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::LambertW: return "lambert_w";
    case UnaryOp::Neg: return "-";
  }
  return "?";
}

std::string print(const Expr& e, int min_level);

std::string print_raw(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return number(e.constant_value());
    case Expr::Kind::Variable:
      return e.var() == Var::X ? "x" : "u";
    case Expr::Kind::Unary:
      if (e.unary_op() == UnaryOp::Neg) return "-" + print(e.child(), 2);
      return std::string(function_name(e.unary_op())) + "(" + print(e.child(), 0) + ")";
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add: return print(e.left(), 0) + " + " + print(e.right(), 1);
        case BinaryOp::Sub: return print(e.left(), 0) + " - " + print(e.right(), 1);
        case BinaryOp::Mul: return print(e.left(), 1) + "*" + print(e.right(), 2);
        case BinaryOp::Div: return print(e.left(), 1) + "/" + print(e.right(), 2);
        case BinaryOp::Pow: return print(e.left(), 3) + "^" + print(e.right(), 2);
      }
  }
  return "?";
}

std::string print(const Expr& e, int min_level) {
  if (level(e) < min_level) return "(" + print_raw(e) + ")";
  return print_raw(e);
}

}  // namespace

std::string to_string(const Expr& e) { return print(e, 0); }

}  // namespace odesurf
