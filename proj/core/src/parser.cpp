#include <cctype>
#include <cstdlib>
#include <map>
#include <string>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"

namespace odesurf {

namespace {

const std::map<std::string, UnaryOp>& function_table() {
  static const std::map<std::string, UnaryOp> table = {
      {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
      {"cot", UnaryOp::Cot},   {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh},
      {"tanh", UnaryOp::Tanh}, {"exp", UnaryOp::Exp},   {"ln", UnaryOp::Ln},
      {"sqrt", UnaryOp::Sqrt}, {"lambert_w", UnaryOp::LambertW},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        e = Expr::binary(BinaryOp::Add, e, parse_term());
      } else if (accept('-')) {
        e = Expr::binary(BinaryOp::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        e = Expr::binary(BinaryOp::Mul, e, parse_factor());
      } else if (accept('/')) {
        e = Expr::binary(BinaryOp::Div, e, parse_factor());
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    skip_ws();
    // Pow binds tighter than unary minus: -2^2 == -(2^2).
    if (accept('-')) {
      Expr inner = parse_factor();
      if (inner.kind() == Expr::Kind::Constant)
        return Expr::constant(-inner.constant_value());
      return Expr::unary(UnaryOp::Neg, inner);
    }
    Expr base = parse_base();
    skip_ws();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_factor());
    return base;
  }

  Expr parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw SyntaxError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return Expr::constant(v);
  }

  Expr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable(Var::X);
    if (name == "u") return Expr::variable(Var::U);
    const auto it = function_table().find(name);
    if (it == function_table().end()) throw UnknownIdentifier(name, start);
    expect('(');
    Expr arg = parse_expr();
    expect(')');
    return Expr::unary(it->second, arg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c))
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) {
  if (text.empty()) throw SyntaxError("empty input", 0);
  return Parser(text).run();
}

}  // namespace odesurf
