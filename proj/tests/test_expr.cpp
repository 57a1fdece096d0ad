#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"
#include "odesurf/region.hpp"

using namespace odesurf;

namespace {

// Shared generator set for the property suites.
std::vector<Expr> generators() {
  return {
      parse("u^2"),
      parse("(1 - 3*x*u)/x^2"),
      parse("(lambert_w(exp(-u-1)) + 1)/(1 - x)"),
      parse("sin(x + 1/u)"),
      parse("exp(x)*cos(u)"),
      parse("sqrt(1 + x^2 + u^2)"),
      parse("tanh(x*u) + sinh(x) - cosh(u)"),
      parse("x^3 - 2*x + 1"),
      parse("ln(1 + x^2) + tan(u/4)"),
      parse("cot(2 + u^2)"),
      parse("-x*u + u/2"),
  };
}

double central_difference(const Expr& e, Var v, double x, double u, double h) {
  if (v == Var::X) return (eval(e, x + h, u) - eval(e, x - h, u)) / (2 * h);
  return (eval(e, x, u + h) - eval(e, x, u - h)) / (2 * h);
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  Expr e = parse("u^2");
  CHECK(e.kind() == Expr::Kind::Binary);
  CHECK(e.binary_op() == BinaryOp::Pow);
  CHECK(e.left() == var_u());
  CHECK(e.right().is_constant(2.0));

  Expr f = parse("(1 - 3*x*u)/x^2");
  CHECK(f.binary_op() == BinaryOp::Div);
  CHECK(eval(f, 2.0, 0.5) == doctest::Approx((1 - 3.0) / 4.0));

  Expr g = parse("(lambert_w(exp(-u-1)) + 1)/(1 - x)");
  CHECK(g.binary_op() == BinaryOp::Div);
  double w1 = eval(parse("lambert_w(x)"), 1.0, 0.0);  // the omega constant
  CHECK(eval(g, 2.0, -1.0) == doctest::Approx((w1 + 1.0) / (1.0 - 2.0)));
}

TEST_CASE("parse precedence and associativity") {
  CHECK(eval(parse("2^3^2"), 0, 0) == 512.0);        // right-assoc pow
  CHECK(eval(parse("-2^2"), 0, 0) == -4.0);          // pow binds tighter than neg
  CHECK(eval(parse("2 + 3*4"), 0, 0) == 14.0);
  CHECK(eval(parse("6/3/2"), 0, 0) == 1.0);          // left-assoc div
  CHECK(parse("sin(x)") == sin(var_x()));
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse("1 + "), SyntaxError);
  CHECK_THROWS_AS(parse("(x + u"), SyntaxError);
  CHECK_THROWS_AS(parse("bogus(x)"), UnknownIdentifier);
  CHECK_THROWS_AS(parse("y + 1"), UnknownIdentifier);
  try {
    parse("x + @");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("eval examples") {
  CHECK(eval(parse("u^2"), 0.0, 3.0) == 9.0);
  CHECK(eval(parse("lambert_w(x)"), std::exp(1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(eval(parse("(1 - 3*x*u)/x^2"), 1.0, 1.0) == -2.0);
}

TEST_CASE("lambert_w is W0 to high relative accuracy") {
  // W(x) e^{W(x)} = x across the principal domain.
  for (double x : {-0.35, -0.2, -0.05, 0.0, 0.5, 1.0, std::exp(1.0), 10.0, 1e4}) {
    double w = eval(parse("lambert_w(x)"), x, 0.0);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12));
  }
  CHECK(eval(parse("lambert_w(x)"), -std::exp(-1.0), 0.0) == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("eval domain errors") {
  CHECK_THROWS_AS(eval(parse("ln(x)"), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval(parse("ln(x)"), -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval(parse("sqrt(x)"), -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval(parse("1/x"), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval(parse("lambert_w(x)"), -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval(parse("cot(x)"), 0.0, 0.0), DomainError);
}

TEST_CASE("diff examples") {
  CHECK(simplify(diff(parse("u^2"), Var::U)) == simplify(parse("2*u")));

  Expr d = diff(parse("sin(x + 1/u)"), Var::U);
  for (double u : {0.5, 1.0, 2.0}) {
    double expect = std::cos(1.0 + 1.0 / u) * (-1.0 / (u * u));
    CHECK(eval(d, 1.0, u) == doctest::Approx(expect).epsilon(1e-12));
  }

  double e = std::exp(1.0);
  double dw = eval(diff(parse("lambert_w(x)"), Var::X), e, 0.0);
  double fd = central_difference(parse("lambert_w(x)"), Var::X, e, 0.0, 1e-6);
  CHECK(dw == doctest::Approx(1.0 / (2.0 * e)).epsilon(1e-10));
  CHECK(dw == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("simplify examples") {
  CHECK(simplify(parse("x + 0*u")) == var_x());
  CHECK(simplify(parse("3*x^2 + x^3*(-3/x)")).is_constant(0.0));
  CHECK(simplify(parse("u - u")).is_constant(0.0));
  CHECK(simplify(parse("1*u")) == var_u());
  CHECK(simplify(parse("x/x")).is_constant(1.0));
  CHECK(simplify(parse("(x^2)^3")) == simplify(parse("x^6")));
}

TEST_CASE("is_numerically_zero examples") {
  Region r{-1.0, 1.0, -1.0, 1.0};
  CHECK(is_numerically_zero(parse("u - u"), r, 1e-12).zero);
  CHECK(is_numerically_zero(parse("u - u"), r, 1e-12).stats.max_abs == 0.0);

  Region rx{1.0, 2.0, -1.0, 1.0};
  auto ev = is_numerically_zero(parse("x"), rx, 1e-8);
  CHECK_FALSE(ev.zero);
  CHECK(ev.stats.max_abs == doctest::Approx(2.0));

  CHECK_THROWS_AS(is_numerically_zero(parse("ln(-1 - x^2)"), rx, 1e-8), RegionUnusable);
}

TEST_CASE("round-trip: parse(print) is structurally stable") {
  for (const Expr& e : generators()) {
    Expr c = simplify(e);
    CHECK(parse(to_string(c)) == c);
    CHECK(parse(to_string(e)) == e);
  }
}

TEST_CASE("diff linearity at random points") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> d(0.3, 1.7);
  auto gs = generators();
  for (int i = 0; i < 100; ++i) {
    const Expr& a = gs[i % gs.size()];
    const Expr& b = gs[(i + 3) % gs.size()];
    Expr sum_d = diff(a + b, Var::U);
    double x = d(rng), u = d(rng);
    try {
      double lhs = eval(sum_d, x, u);
      double rhs = eval(diff(a, Var::U), x, u) + eval(diff(b, Var::U), x, u);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    } catch (const DomainError&) {
    }
  }
}

TEST_CASE("diff agrees with central differences") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> d(0.3, 1.5);
  for (const Expr& e : generators()) {
    for (Var v : {Var::X, Var::U}) {
      Expr de = diff(e, v);
      int checked = 0;
      while (checked < 50) {
        double x = d(rng), u = d(rng);
        try {
          double sym = eval(de, x, u);
          double fd = central_difference(e, v, x, u, 1e-6);
          CHECK(std::abs(sym - fd) <= 1e-5 * (1.0 + std::abs(sym)));
          ++checked;
        } catch (const DomainError&) {
        }
      }
    }
  }
}

TEST_CASE("simplify soundness on sample points") {
  Region r{0.3, 1.5, 0.3, 1.5};
  for (const Expr& e : generators()) {
    Expr s = simplify(e);
    for (const SamplePoint& p : sample_points(r)) {
      try {
        double a = eval(e, p.x, p.u);
        double b = eval(s, p.x, p.u);
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
      } catch (const DomainError&) {
      }
    }
  }
}

TEST_CASE("region sampling is deterministic in the seed") {
  Region r{0.0, 1.0, 0.0, 1.0};
  r.grid_n = 5;
  auto p1 = sample_points(r);
  auto p2 = sample_points(r);
  REQUIRE(p1.size() == p2.size());
  CHECK(p1.size() == 5 * 5 + 64);
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].x == p2[i].x);
    CHECK(p1[i].u == p2[i].u);
  }
  r.seed = 43;
  auto p3 = sample_points(r);
  bool same = true;
  for (size_t i = 25; i < p3.size(); ++i) same = same && p3[i].x == p1[i].x;
  CHECK_FALSE(same);
}

TEST_CASE("region validation") {
  Region bad{1.0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), Error);
  Region bad2{0.0, 1.0, 0.0, 1.0};
  bad2.grid_n = 1;
  CHECK_THROWS_AS(bad2.validate(), Error);
}
