#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"

namespace odesurf {

Expr diff(const Expr& e, Var v) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return num(0.0);
    case Expr::Kind::Variable:
      return num(e.var() == v ? 1.0 : 0.0);
    case Expr::Kind::Unary: {
      const Expr g = e.child();
      const Expr dg = diff(g, v);
      switch (e.unary_op()) {
        case UnaryOp::Neg: return -dg;
        case UnaryOp::Sin: return cos(g) * dg;
        case UnaryOp::Cos: return -(sin(g) * dg);
        case UnaryOp::Tan: return (num(1.0) + pow(tan(g), 2.0)) * dg;
        case UnaryOp::Cot: return -((num(1.0) + pow(cot(g), 2.0)) * dg);
        case UnaryOp::Sinh: return cosh(g) * dg;
        case UnaryOp::Cosh: return sinh(g) * dg;
        case UnaryOp::Tanh: return (num(1.0) - pow(tanh(g), 2.0)) * dg;
        case UnaryOp::Exp: return exp(g) * dg;
        case UnaryOp::Ln: return dg / g;
        case UnaryOp::Sqrt: return dg / (num(2.0) * sqrt(g));
        case UnaryOp::LambertW:
          // dW(g)/dv = g' / (e^{W(g)} (1 + W(g)))
          return dg / (exp(lambert_w(g)) * (num(1.0) + lambert_w(g)));
      }
      break;
    }
    case Expr::Kind::Binary: {
      const Expr a = e.left();
      const Expr b = e.right();
      const Expr da = diff(a, v);
      const Expr db = diff(b, v);
      switch (e.binary_op()) {
        case BinaryOp::Add: return da + db;
        case BinaryOp::Sub: return da - db;
        case BinaryOp::Mul: return da * b + a * db;
        case BinaryOp::Div: return (da * b - a * db) / pow(b, 2.0);
        case BinaryOp::Pow:
          if (b.kind() == Expr::Kind::Constant) {
            const double c = b.constant_value();
            if (c == 0.0) return num(0.0);
            return num(c) * pow(a, c - 1.0) * da;
          }
          // a^b = exp(b ln a)
          return pow(a, b) * (db * ln(a) + b * da / a);
      }
      break;
    }
  }
  throw Error("diff: malformed expression");
}

}  // namespace odesurf
