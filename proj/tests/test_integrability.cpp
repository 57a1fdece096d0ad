#include <doctest.h>

#include <cmath>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"
#include "odesurf/integrability.hpp"
#include "odesurf/numerics.hpp"
#include "odesurf/region.hpp"
#include "odesurf/surface.hpp"

using namespace odesurf;

namespace {

const char* kLambertPhi = "(lambert_w(exp(-u-1)) + 1)/(1 - x)";
const char* kHypPhi = "(1-3*x*u)/x^2";
const char* kSineEps = "ln((1/u^2)*sin(1/u))";

bool numerically_zero(const Expr& e, const Region& r, double tol) {
  return is_numerically_zero(e, r, tol).zero;
}

}  // namespace

TEST_CASE("op_T examples") {
  CHECK(op_T(parse("u^2"), num(0.0), num(0.0)).is_constant(0.0));
  CHECK(op_T(parse("u^2"), num(0.0), num(1.0)) == simplify(parse("2*u")));

  Expr t = op_T(parse(kHypPhi), parse("x + 3*ln(x)"), parse("exp(-x)"));
  Region r{1.0, 2.0, -1.0, 1.0};
  CHECK(numerically_zero(t, r, 1e-10));
}

TEST_CASE("op_S examples") {
  CHECK(op_S(parse("u^2"), num(0.0), num(0.0)).is_constant(0.0));

  Expr s = op_S(parse(kHypPhi), parse("x + 3*ln(x)"), parse("sinh(x)"));
  Region r{1.0, 2.0, -1.0, 1.0};
  CHECK(numerically_zero(simplify(s - parse("exp(-x)")), r, 1e-10));

  Expr ssin = op_S(parse("u^2"), parse(kSineEps), parse("sin(x)"));
  Region rs{0.1, 0.9, 0.2, 0.3};
  CHECK(numerically_zero(simplify(ssin - parse("cos(x) + cot(1/u)*sin(x)")), rs, 1e-9));
}

TEST_CASE("closedness_residual examples") {
  Region r{1.0, 2.0, -1.0, 1.0};
  CHECK(numerically_zero(closedness_residual(parse(kHypPhi), parse("x^3")), r, 1e-12));

  Region rs{0.1, 0.5, 0.4, 0.6};
  CHECK(numerically_zero(closedness_residual(parse("u^2"), parse("(1/u^2)*sin(x + 1/u)")),
                         rs, 1e-10));

  CHECK(closedness_residual(parse("sin(x*u)"), num(0.0)).is_constant(0.0));
}

TEST_CASE("lie_symmetry_check verdicts") {
  Region r{0.5, 1.5, 1.0, 2.0};
  SymmetryCheck c = lie_symmetry_check(parse("u^2"), {num(0.0), parse("u^2")}, r, 1e-8);
  CHECK(c.is_symmetry);
  CHECK(simplify(c.rho).is_constant(0.0));
  CHECK(c.rho_crosscheck_max <= 1e-9);

  // V = A is pointwise proportional to A.
  CHECK_THROWS_AS(lie_symmetry_check(parse("u^2"), {num(1.0), parse("u^2")}, r, 1e-8),
                  DegenerateField);

  Region rh{1.0, 2.0, 0.1, 1.0};
  SymmetryCheck ch = lie_symmetry_check(parse(kHypPhi), {num(0.0), parse("x^-3")}, rh, 1e-8);
  CHECK(ch.is_symmetry);
  CHECK(simplify(ch.rho).is_constant(0.0));

  SymmetryCheck cn = lie_symmetry_check(parse("u^2"), {num(0.0), parse("u^3")}, r, 1e-8);
  CHECK_FALSE(cn.is_symmetry);
  CHECK(cn.evidence.max_abs > 1e-2);
}

TEST_CASE("perp_component") {
  CHECK(perp_component(parse("u^2"), {num(0.0), parse("sin(x)")}) == sin(var_x()));
  CHECK(perp_component(parse("u^2"), {num(1.0), parse("u^2")}).is_constant(0.0));
  CHECK(perp_component(parse("u^2"), {num(1.0), num(0.0)}) == simplify(parse("-u^2")));
}

TEST_CASE("flat_first_integral: Lambert example") {
  Region r{2.0, 3.0, -1.0, 1.0};
  IntegrationReport rep = flat_first_integral({parse(kLambertPhi), r});
  CHECK(rep.method == IntegrationMethod::FlatDirect);
  REQUIRE(rep.first_integral.has_value());
  CHECK_FALSE(rep.degenerate_first_integral);
  CHECK(rep.residual_first_integral <= 1e-9);

  // F agrees with W(e^{-u-1})/(1-x) pointwise.
  Expr expect = parse("lambert_w(exp(-u-1))/(1-x)");
  CHECK(numerically_zero(simplify(*rep.first_integral - expect), r, 1e-9));
  CHECK(numerically_zero(apply_A(parse(kLambertPhi), *rep.first_integral), r, 1e-9));
}

TEST_CASE("flat_first_integral: u-independent phi falls back") {
  Region r{0.0, 1.0, -1.0, 1.0};
  IntegrationReport rep = flat_first_integral({parse("sin(x)"), r});
  CHECK(rep.degenerate_first_integral);
  REQUIRE(rep.first_integral.has_value());
  CHECK(numerically_zero(apply_A(parse("sin(x)"), *rep.first_integral), r, 1e-9));
  // F = u - int phi dx = u + cos(x) up to an additive constant.
  Expr d = simplify(*rep.first_integral - parse("u + cos(x)"));
  double c0 = eval(d, 0.5, 0.0);
  CHECK(numerically_zero(simplify(d - num(c0)), r, 1e-9));
}

TEST_CASE("flat_first_integral rejects a non-flat problem") {
  Region r{0.0, 1.0, -1.0, 1.0};
  CHECK_THROWS_AS(flat_first_integral({parse("u"), r}), NotFlat);
}

TEST_CASE("delta_for_constant_k") {
  CHECK(delta_for_constant_k(1.0) == sin(var_x()));
  CHECK(delta_for_constant_k(-1.0) == sinh(var_x()));
  CHECK(delta_for_constant_k(0.0).is_constant(1.0));
  CHECK(delta_for_constant_k(4.0) == simplify(parse("sin(2*x)")));
}

TEST_CASE("constant_curvature_integrating_factor: sine deformation") {
  Region r{0.1, 0.5, 0.4, 0.6};
  OdeProblem p{parse("u^2"), r};
  IntegrationReport rep = constant_curvature_integrating_factor(p, {parse(kSineEps)});
  CHECK(rep.branch == Branch::SNonvanishing);
  REQUIRE(rep.mu.has_value());
  CHECK(rep.delta_used == sin(var_x()));

  // mu coincides with (1/u^2) sin(x + 1/u) up to a constant nonzero factor.
  Expr ref = parse("(1/u^2)*sin(x + 1/u)");
  double c = eval(*rep.mu, 0.3, 0.5) / eval(ref, 0.3, 0.5);
  CHECK(std::abs(c) > 1e-12);
  CHECK(numerically_zero(simplify(*rep.mu - num(c) * ref), r, 1e-9));
  CHECK(residual_sweep(closedness_residual(p.phi, *rep.mu), r).max_abs <= 1e-10);
}

TEST_CASE("constant_curvature_integrating_factor: hyperbolic example") {
  Region r{1.0, 2.0, -1.0, 1.0};
  OdeProblem p{parse(kHypPhi), r};
  IntegrationReport rep = constant_curvature_integrating_factor(p, {parse("x + 3*ln(x)")});
  CHECK(rep.branch == Branch::SNonvanishing);
  CHECK(rep.delta_used == sinh(var_x()));
  REQUIRE(rep.mu.has_value());
  CHECK(numerically_zero(simplify(*rep.mu - parse("x^3")), r, 1e-9));
}

TEST_CASE("constant_curvature_integrating_factor: S_vanishes branch") {
  // eps = ln(mu) for the known factor mu = x^3 deforms to a flat surface.
  Region r{1.0, 2.0, -1.0, 1.0};
  OdeProblem p{parse(kHypPhi), r};
  IntegrationReport rep = constant_curvature_integrating_factor(p, {parse("3*ln(x)")});
  CHECK(rep.branch == Branch::SVanishes);
  CHECK(rep.delta_used.has_value());
  REQUIRE(rep.mu.has_value());
  CHECK(numerically_zero(simplify(*rep.mu - parse("x^3")), r, 1e-9));
  CHECK(numerically_zero(closedness_residual(p.phi, *rep.mu), r, 1e-9));
}

TEST_CASE("constant_curvature_integrating_factor rejections") {
  Region r{-1.0, 1.0, 1.0, 2.0};
  OdeProblem p{parse("u^2"), r};
  CHECK_THROWS_AS(constant_curvature_integrating_factor(p, {num(0.0)}),
                  NotConstantCurvature);

  // phi = 0, eps = ln(sin(x)): K = 1, S(sin(x)) = 0, and delta = sin(x)
  // changes sign at x = pi inside the region.
  Region wide{0.5, 3.5, -1.0, 1.0};
  OdeProblem pz{num(0.0), wide};
  CHECK_THROWS_AS(constant_curvature_integrating_factor(pz, {parse("ln(sin(x))")}),
                  DeltaVanishesOnRegion);
}

TEST_CASE("jacobi_residuals") {
  auto [t1, t2] = jacobi_residuals(parse("u^2"), num(0.0), num(3.0), num(0.0));
  CHECK(t1.is_constant(0.0));
  CHECK(t2.is_constant(0.0));

  auto [a1, a2] = jacobi_residuals(parse("u^2"), parse(kSineEps), num(0.0), sin(var_x()));
  Region r{0.1, 0.9, 0.2, 0.3};
  CHECK(numerically_zero(a1, r, 1e-10));
  CHECK(numerically_zero(a2, r, 1e-9));

  auto [x1, x2] = jacobi_residuals(parse("u^2"), num(0.0), var_x(), num(0.0));
  CHECK(simplify(x1).is_constant(0.0));
  CHECK(simplify(x2).is_constant(0.0));
}

TEST_CASE("factorization_check over the matrix") {
  struct Pair { const char* phi; const char* eps; Region r; };
  const Pair pairs[] = {
      {"u^2", "0", {0.5, 1.5, 1.0, 2.0}},
      {"u^2", kSineEps, {0.1, 0.9, 0.2, 0.3}},
      {kHypPhi, "0", {1.0, 2.0, -1.0, 1.0}},
      {kHypPhi, "x + 3*ln(x)", {1.0, 2.0, -1.0, 1.0}},
      {kLambertPhi, "0", {2.0, 3.0, -1.0, 1.0}},
  };
  const char* hs[] = {"1", "x", "u", "sin(x)", "exp(x)"};
  for (const Pair& q : pairs) {
    for (const char* h : hs) {
      Expr res = factorization_check(parse(q.phi), parse(q.eps), parse(h));
      SweepStats st = residual_sweep(res, q.r);
      double scale = 1.0 + residual_sweep(parse(h), q.r).max_abs;
      CHECK(st.max_abs <= 1e-9 * scale);
    }
  }
}

TEST_CASE("first_integral_from_mu: x^3 factor") {
  Region r{1.0, 2.0, -1.0, 1.0};
  OdeProblem p{parse(kHypPhi), r};
  QuadratureReport q = first_integral_from_mu(p, parse("x^3"), 1.0, 0.0);
  CHECK(q.max_drift <= 1e-8);

  // Matches the hand-derived F = x^3 u - x^2/2 up to the basepoint constant.
  auto ref = [](double x, double u) { return x * x * x * u - x * x / 2.0; };
  double c = (*q.field)(1.5, 0.5) - ref(1.5, 0.5);
  for (double x : {1.1, 1.5, 1.9}) {
    for (double u : {-0.5, 0.0, 0.5}) {
      CHECK((*q.field)(x, u) - ref(x, u) == doctest::Approx(c).epsilon(1e-8));
    }
  }
}

TEST_CASE("first_integral_from_mu rejects a non-factor") {
  Region r{1.0, 2.0, -1.0, 1.0};
  OdeProblem p{parse(kHypPhi), r};
  CHECK_THROWS_AS(first_integral_from_mu(p, var_x(), 1.5, 0.0), NotAnIntegratingFactor);
}

TEST_CASE("first_integral_from_mu: Lambert mu from F_u") {
  Region r{2.0, 3.0, -1.0, 1.0};
  Expr F = parse("lambert_w(exp(-u-1))/(1-x)");
  Expr mu = simplify(diff(F, Var::U));
  OdeProblem p{parse(kLambertPhi), r};
  QuadratureReport q = first_integral_from_mu(p, mu, 2.5, 0.0);
  CHECK(q.max_drift <= 1e-6);
}

TEST_CASE("symmetrizing/integrating-factor duality for the S_vanishes branch") {
  Region r{1.0, 2.0, 0.1, 1.0};
  OdeProblem p{parse(kHypPhi), r};
  IntegrationReport rep = constant_curvature_integrating_factor(p, {parse("3*ln(x)")});
  REQUIRE(rep.branch == Branch::SVanishes);
  // delta-tilde = e^{-eps} delta = x^{-3}; its field is a symmetry and its
  // reciprocal is the integrating factor.
  Expr dtilde = simplify(exp(num(0.0) - parse("3*ln(x)")) * *rep.delta_used);
  SymmetryCheck sc = lie_symmetry_check(p.phi, {num(0.0), dtilde}, r, 1e-8);
  CHECK(sc.is_symmetry);
  CHECK(numerically_zero(sc.rho, r, 1e-8));
  CHECK(numerically_zero(closedness_residual(p.phi, simplify(num(1.0) / dtilde)), r, 1e-8));
}

TEST_CASE("eps = ln(mu) deformation closure") {
  struct Case { const char* phi; const char* mu; Region r; };
  const Case cases[] = {
      {kHypPhi, "x^3", {1.0, 2.0, -1.0, 1.0}},
      {"u^2", "(1/u^2)*sin(x + 1/u)", {0.1, 0.5, 0.4, 0.6}},
  };
  for (const Case& c : cases) {
    Expr phi = parse(c.phi);
    Expr mu = parse(c.mu);
    REQUIRE(numerically_zero(closedness_residual(phi, mu), c.r, 1e-9));
    Expr eps = ln(mu);
    CHECK(numerically_zero(delta_eps(phi, eps), c.r, 1e-9));
    CHECK(numerically_zero(curvature(phi, eps), c.r, 1e-8));
  }
}
