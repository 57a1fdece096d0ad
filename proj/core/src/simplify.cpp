#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"

// Canonicalization strategy: sums and products are flattened into
// coefficient/key maps ordered by the canonical tree order, so that
// structurally equal subtrees cancel (a - a -> 0, a/a -> 1, x*x -> x^2).
// exp factors are merged by summing their arguments, and exp(c*ln(a))
// collapses to a^c.  Constant folding goes through eval and backs off on
// DomainError, so simplification never widens the evaluation domain
// through a constant subterm.

namespace odesurf {

namespace {

bool is_const(const Expr& e) { return e.kind() == Expr::Kind::Constant; }

bool fold_constant(const Expr& e, double* out) {
  try {
    *out = eval(e, 0.0, 0.0);  // constants only; variables never reached
  } catch (const DomainError&) {
    return false;
  }
  if (!std::isfinite(*out)) return false;
  return true;
}

// A product in factored form: coeff * prod base_i ^ exp_i.
struct Product {
  double coeff = 1.0;
  std::map<Expr, double, ExprLess> factors;      // base -> constant exponent
  std::vector<Expr> exp_args;                    // arguments of exp factors

  void add_factor(const Expr& base, double exponent) {
    if (is_const(base)) {
      double v = base.constant_value();
      double folded = std::pow(v, exponent);
      if (std::isfinite(folded) && (v > 0.0 || exponent == std::round(exponent))) {
        coeff *= folded;
        return;
      }
    }
    factors[base] += exponent;
  }
};

Expr simplify_impl(const Expr& e);
Expr rebuild_sum(const std::vector<std::pair<Expr, double>>& parts);

// Split a simplified expression into product pieces.
void collect_factors(const Expr& e, double outer_exp, Product* p) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      p->add_factor(e, outer_exp);
      return;
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Mul:
          collect_factors(e.left(), outer_exp, p);
          collect_factors(e.right(), outer_exp, p);
          return;
        case BinaryOp::Div:
          collect_factors(e.left(), outer_exp, p);
          collect_factors(e.right(), -outer_exp, p);
          return;
        case BinaryOp::Pow:
          if (is_const(e.right())) {
            collect_factors(e.left(), outer_exp * e.right().constant_value(), p);
            return;
          }
          p->add_factor(e, outer_exp);
          return;
        default:
          p->add_factor(e, outer_exp);
          return;
      }
    case Expr::Kind::Unary:
      switch (e.unary_op()) {
        case UnaryOp::Neg:
          if (outer_exp != std::round(outer_exp)) {
            p->add_factor(e, outer_exp);
            return;
          }
          p->coeff *= std::pow(-1.0, outer_exp);
          collect_factors(e.child(), outer_exp, p);
          return;
        case UnaryOp::Exp:
          if (outer_exp == 1.0) {
            p->exp_args.push_back(e.child());
          } else {
            p->exp_args.push_back(simplify_impl(num(outer_exp) * e.child()));
          }
          return;
        default:
          p->add_factor(e, outer_exp);
          return;
      }
    default:
      p->add_factor(e, outer_exp);
      return;
  }
}

// Route one summand of an exp argument into the product: exp(c*ln(a))
// becomes the factor a^c, constants fold, the rest stays under exp.
void emit_exp_term(const Expr& term, Product* p, std::vector<Expr>* residual) {
  if (is_const(term)) {
    double v = std::exp(term.constant_value());
    if (std::isfinite(v) && v != 0.0) {
      p->coeff *= v;
      return;
    }
  }
  if (term.kind() == Expr::Kind::Unary && term.unary_op() == UnaryOp::Ln) {
    collect_factors(term.child(), 1.0, p);
    return;
  }
  // c * ln(a) (in canonical form the constant sits on the left).
  if (term.kind() == Expr::Kind::Binary && term.binary_op() == BinaryOp::Mul &&
      is_const(term.left()) && term.right().kind() == Expr::Kind::Unary &&
      term.right().unary_op() == UnaryOp::Ln) {
    collect_factors(term.right().child(), term.left().constant_value(), p);
    return;
  }
  residual->push_back(term);
}

void split_sum_terms(const Expr& e, std::vector<Expr>* out) {
  if (e.kind() == Expr::Kind::Binary && e.binary_op() == BinaryOp::Add) {
    split_sum_terms(e.left(), out);
    split_sum_terms(e.right(), out);
    return;
  }
  out->push_back(e);
}

Expr rebuild_product(Product p) {
  // Fold the merged exp arguments back in.
  if (!p.exp_args.empty()) {
    std::vector<Expr> args = std::move(p.exp_args);
    p.exp_args.clear();
    Expr sum = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) sum = sum + args[i];
    Expr merged = simplify_impl(sum);
    std::vector<Expr> terms;
    split_sum_terms(merged, &terms);
    std::vector<Expr> residual;
    for (const Expr& t : terms) emit_exp_term(t, &p, &residual);
    if (!residual.empty()) {
      Expr arg = residual[0];
      for (std::size_t i = 1; i < residual.size(); ++i) arg = arg + residual[i];
      p.factors[Expr::unary(UnaryOp::Exp, arg)] += 1.0;
    }
  }

  if (p.coeff == 0.0) return num(0.0);

  std::vector<Expr> pieces;
  for (const auto& [base, exponent] : p.factors) {
    if (exponent == 0.0) continue;
    if (exponent == 1.0) {
      pieces.push_back(base);
    } else {
      pieces.push_back(pow(base, num(exponent)));
    }
  }
  if (pieces.empty()) return num(p.coeff);
  Expr result = pieces[0];
  for (std::size_t i = 1; i < pieces.size(); ++i) result = result * pieces[i];
  if (p.coeff != 1.0) result = num(p.coeff) * result;
  return result;
}

// Decompose a simplified term into (numeric coefficient, canonical key).
std::pair<double, Expr> term_key(const Expr& term) {
  Product p;
  collect_factors(term, 1.0, &p);
  double coeff = p.coeff;
  p.coeff = 1.0;
  Expr key = rebuild_product(std::move(p));
  if (is_const(key)) {
    coeff *= key.constant_value();
    key = num(1.0);
  }
  return {coeff, key};
}

void collect_terms(const Expr& e, double sign,
                   std::map<Expr, double, ExprLess>* terms, double* constant) {
  if (e.kind() == Expr::Kind::Binary) {
    if (e.binary_op() == BinaryOp::Add) {
      collect_terms(e.left(), sign, terms, constant);
      collect_terms(e.right(), sign, terms, constant);
      return;
    }
    if (e.binary_op() == BinaryOp::Sub) {
      collect_terms(e.left(), sign, terms, constant);
      collect_terms(e.right(), -sign, terms, constant);
      return;
    }
  }
  if (e.kind() == Expr::Kind::Unary && e.unary_op() == UnaryOp::Neg) {
    collect_terms(e.child(), -sign, terms, constant);
    return;
  }
  if (is_const(e)) {
    *constant += sign * e.constant_value();
    return;
  }
  auto [coeff, key] = term_key(e);
  if (key.is_constant(1.0)) {
    *constant += sign * coeff;
    return;
  }
  (*terms)[key] += sign * coeff;
}

Expr rebuild_sum(const std::vector<std::pair<Expr, double>>& parts) {
  std::vector<Expr> pieces;
  for (const auto& [key, coeff] : parts) {
    if (coeff == 0.0) continue;
    if (coeff == 1.0) {
      pieces.push_back(key);
    } else {
      pieces.push_back(num(coeff) * key);
    }
  }
  if (pieces.empty()) return num(0.0);
  Expr result = pieces[0];
  for (std::size_t i = 1; i < pieces.size(); ++i) result = result + pieces[i];
  return result;
}

Expr simplify_sum(const Expr& e) {
  std::map<Expr, double, ExprLess> terms;
  double constant = 0.0;
  collect_terms(e, 1.0, &terms, &constant);
  std::vector<std::pair<Expr, double>> parts;
  if (constant != 0.0) parts.emplace_back(num(constant), 1.0);
  for (const auto& kv : terms) parts.emplace_back(kv.first, kv.second);
  return rebuild_sum(parts);
}

Expr simplify_product(const Expr& e) {
  Product p;
  collect_factors(e, 1.0, &p);
  return rebuild_product(std::move(p));
}

Expr simplify_unary(UnaryOp op, const Expr& c) {
  Expr node = Expr::unary(op, c);
  switch (op) {
    case UnaryOp::Neg:
      return simplify_product(node);
    case UnaryOp::Exp:
      if (c.kind() == Expr::Kind::Unary && c.unary_op() == UnaryOp::Ln) return c.child();
      return simplify_product(node);
    case UnaryOp::Ln:
      if (c.kind() == Expr::Kind::Unary && c.unary_op() == UnaryOp::Exp) return c.child();
      break;
    default:
      break;
  }
  if (is_const(c)) {
    double v;
    if (fold_constant(node, &v)) return num(v);
  }
  return node;
}

Expr simplify_pow(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return num(1.0);
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(1.0)) return num(1.0);
  if (is_const(a) && is_const(b)) {
    double v;
    if (fold_constant(pow(a, b), &v)) return num(v);
  }
  if (is_const(b)) {
    // Constant exponents distribute over factored bases and nested powers.
    return simplify_product(pow(a, b));
  }
  return pow(a, b);
}

Expr simplify_impl(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      return e;
    case Expr::Kind::Unary:
      return simplify_unary(e.unary_op(), simplify_impl(e.child()));
    case Expr::Kind::Binary: {
      Expr l = simplify_impl(e.left());
      Expr r = simplify_impl(e.right());
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
          return simplify_sum(Expr::binary(e.binary_op(), l, r));
        case BinaryOp::Mul:
        case BinaryOp::Div:
          return simplify_product(Expr::binary(e.binary_op(), l, r));
        case BinaryOp::Pow:
          return simplify_pow(l, r);
      }
    }
  }
  return e;
}

}  // namespace

Expr simplify(const Expr& e) { return simplify_impl(e); }

}  // namespace odesurf
