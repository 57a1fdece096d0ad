#include <cmath>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"
#include "odesurf/lambert.hpp"

namespace odesurf {

namespace {

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(what);
  return v;
}

}  // namespace

double eval(const Expr& e, double x, double u) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e.constant_value();
    case Expr::Kind::Variable:
      return e.var() == Var::X ? x : u;
    case Expr::Kind::Unary: {
      const double c = eval(e.child(), x, u);
      switch (e.unary_op()) {
        case UnaryOp::Neg: return -c;
        case UnaryOp::Sin: return finite_or_throw(std::sin(c), "sin out of domain");
        case UnaryOp::Cos: return finite_or_throw(std::cos(c), "cos out of domain");
        case UnaryOp::Tan: return finite_or_throw(std::tan(c), "tan at a pole");
        case UnaryOp::Cot: {
          const double s = std::sin(c);
          if (s == 0.0) throw DomainError("cot at a multiple of pi");
          return finite_or_throw(std::cos(c) / s, "cot at a pole");
        }
        case UnaryOp::Sinh: return finite_or_throw(std::sinh(c), "sinh overflow");
        case UnaryOp::Cosh: return finite_or_throw(std::cosh(c), "cosh overflow");
        case UnaryOp::Tanh: return std::tanh(c);
        case UnaryOp::Exp: return finite_or_throw(std::exp(c), "exp overflow");
        case UnaryOp::Ln:
          if (c <= 0.0) throw DomainError("ln of a non-positive value");
          return std::log(c);
        case UnaryOp::Sqrt:
          if (c < 0.0) throw DomainError("sqrt of a negative value");
          return std::sqrt(c);
        case UnaryOp::LambertW:
          return lambert_w(c);
      }
      break;
    }
    case Expr::Kind::Binary: {
      const double l = eval(e.left(), x, u);
      const double r = eval(e.right(), x, u);
      switch (e.binary_op()) {
        case BinaryOp::Add: return finite_or_throw(l + r, "addition overflow");
        case BinaryOp::Sub: return finite_or_throw(l - r, "subtraction overflow");
        case BinaryOp::Mul: return finite_or_throw(l * r, "multiplication overflow");
        case BinaryOp::Div:
          if (r == 0.0) throw DomainError("division by zero");
          return finite_or_throw(l / r, "division overflow");
        case BinaryOp::Pow:
          return finite_or_throw(std::pow(l, r), "pow out of domain");
      }
      break;
    }
  }
  throw Error("eval: malformed expression");
}

}  // namespace odesurf
