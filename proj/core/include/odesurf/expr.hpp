#ifndef ODESURF_EXPR_HPP
#define ODESURF_EXPR_HPP

#include <memory>
#include <string>

namespace odesurf {

enum class Var { X, U };

enum class UnaryOp { Neg, Sin, Cos, Tan, Cot, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, LambertW };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Immutable algebraic expression tree over the variables x and u.
// Copies are cheap (shared subtrees); all operations on Expr are pure.
class Expr {
 public:
  enum class Kind { Constant, Variable, Unary, Binary };

  Expr();  // the constant 0

  static Expr constant(double value);  // value must be finite
  static Expr variable(Var v);
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr left, Expr right);

  Kind kind() const;
  double constant_value() const;  // Kind::Constant only
  Var var() const;                // Kind::Variable only
  UnaryOp unary_op() const;       // Kind::Unary only
  BinaryOp binary_op() const;     // Kind::Binary only
  Expr child() const;             // Kind::Unary only
  Expr left() const;              // Kind::Binary only
  Expr right() const;             // Kind::Binary only

  bool is_constant(double value) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Structural equality.
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

// Canonical total order on trees: by node-kind rank, then operator, then
// recursively by children.  Used for order-canonicalized sums/products.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Convenience builders.
inline Expr num(double v) { return Expr::constant(v); }
inline Expr var_x() { return Expr::variable(Var::X); }
inline Expr var_u() { return Expr::variable(Var::U); }

inline Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::Add, a, b); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::Sub, a, b); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::Mul, a, b); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(BinaryOp::Div, a, b); }
inline Expr operator-(Expr a) { return Expr::unary(UnaryOp::Neg, a); }
inline Expr pow(Expr a, Expr b) { return Expr::binary(BinaryOp::Pow, a, b); }
inline Expr pow(Expr a, double b) { return pow(a, num(b)); }
inline Expr sin(Expr a) { return Expr::unary(UnaryOp::Sin, a); }
inline Expr cos(Expr a) { return Expr::unary(UnaryOp::Cos, a); }
inline Expr tan(Expr a) { return Expr::unary(UnaryOp::Tan, a); }
inline Expr cot(Expr a) { return Expr::unary(UnaryOp::Cot, a); }
inline Expr sinh(Expr a) { return Expr::unary(UnaryOp::Sinh, a); }
inline Expr cosh(Expr a) { return Expr::unary(UnaryOp::Cosh, a); }
inline Expr tanh(Expr a) { return Expr::unary(UnaryOp::Tanh, a); }
inline Expr exp(Expr a) { return Expr::unary(UnaryOp::Exp, a); }
inline Expr ln(Expr a) { return Expr::unary(UnaryOp::Ln, a); }
inline Expr sqrt(Expr a) { return Expr::unary(UnaryOp::Sqrt, a); }
inline Expr lambert_w(Expr a) { return Expr::unary(UnaryOp::LambertW, a); }

// Canonical printed form; re-parses to a structurally equal tree.
std::string to_string(const Expr& e);

// Parse the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?
//   base   := number | 'x' | 'u' | ident '(' expr ')' | '(' expr ')' | '-' base
// Throws SyntaxError / UnknownIdentifier.
Expr parse(const std::string& text);

// IEEE double evaluation at (x, u).  Throws DomainError when an
// intermediate value leaves a function's domain.
double eval(const Expr& e, double x, double u);

// Exact symbolic partial derivative.
Expr diff(const Expr& e, Var v);

// Normalized tree: constant folding, the usual identities, and flattened
// order-canonicalized sums/products, so structural equality detects
// syntactic zero.  Semantics-preserving on the evaluation domain.
Expr simplify(const Expr& e);

}  // namespace odesurf

#endif  // ODESURF_EXPR_HPP
