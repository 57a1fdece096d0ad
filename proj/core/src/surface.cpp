#include "odesurf/surface.hpp"

#include <cmath>

#include "odesurf/errors.hpp"

namespace odesurf {

Expr apply_A(const Expr& phi, const Expr& h) {
  return simplify(diff(h, Var::X) + phi * diff(h, Var::U));
}

Expr delta_eps(const Expr& phi, const Expr& eps) {
  return simplify(apply_A(phi, eps) + diff(phi, Var::U));
}

Expr curvature(const Expr& phi, const Expr& eps) {
  const Expr d = delta_eps(phi, eps);
  return simplify(num(-1.0) * apply_A(phi, d) - pow(d, 2.0));
}

Expr volume_form_density(const Expr& eps) { return simplify(exp(eps)); }

SurfaceData build_surface(const OdeProblem& p, const Deformation& d) {
  p.region.validate();

  SurfaceData s;
  s.phi = simplify(p.phi);
  s.epsilon = simplify(d.epsilon);
  s.region = p.region;

  const Expr e2 = simplify(exp(num(2.0) * s.epsilon));
  s.E = simplify(num(1.0) + pow(s.phi, 2.0) * e2);
  s.F = simplify(num(-1.0) * s.phi * e2);
  s.G = e2;
  s.delta_eps = delta_eps(s.phi, s.epsilon);
  s.curvature = curvature(s.phi, s.epsilon);

  // phi must be evaluable on at least half of the region; throws otherwise.
  residual_sweep(s.phi, p.region);
  // The metric and connection data must be evaluable too.  Note: the raw
  // epsilon may be undefined where e^{2 eps} and delta_eps are fine (the
  // simplifier collapses exp(2 ln g) to g^2), so the derived data is what
  // gets checked.
  residual_sweep(s.G, p.region);
  residual_sweep(s.delta_eps, p.region);

  // Positive-definiteness: E > 0 and EG - F^2 = e^{2 eps} > 0 pointwise.
  for (const auto& pt : sample_points(p.region)) {
    double ev, gv;
    try {
      ev = eval(s.E, pt.x, pt.u);
      gv = eval(s.G, pt.x, pt.u);
    } catch (const DomainError&) {
      continue;
    }
    if (!(ev > 0.0) || !(gv > 0.0))
      throw Error("build_surface: metric not positive definite on the region");
  }

  // Frame relations, structurally after simplify.
  const Expr rel1 = simplify(s.E + s.F * s.phi - num(1.0));
  const Expr rel2 = simplify(s.F + s.G * s.phi);
  if (!rel1.is_constant(0.0) || !rel2.is_constant(0.0)) {
    // Fall back to a numeric check when simplification stops short.
    if (residual_sweep(rel1, p.region).max_abs > 1e-10 ||
        residual_sweep(rel2, p.region).max_abs > 1e-10)
      throw Error("build_surface: frame relations violated");
  }

  // eps = 0: the frame-formula curvature must match -d_u(A(phi)).
  if (s.epsilon.is_constant(0.0)) {
    const Expr alt = simplify(num(-1.0) * diff(apply_A(s.phi, s.phi), Var::U));
    const Expr discrepancy = simplify(s.curvature - alt);
    if (residual_sweep(discrepancy, p.region).max_abs > 1e-9)
      throw Error("build_surface: curvature reduction check failed at eps = 0");
  }

  return s;
}

CurvatureClass classify_curvature(const SurfaceData& s, double tol) {
  if (!(tol > 0.0)) throw Error("classify_curvature: tol must be positive");
  CurvatureClass c;
  c.sweep = residual_sweep(s.curvature, s.region);

  const ZeroEvidence zero = is_numerically_zero(s.curvature, s.region, tol);
  if (zero.zero) {
    c.kind = CurvatureClass::Kind::Zero;
    c.k = 0.0;
    c.max_deviation = zero.stats.max_abs;
    return c;
  }

  // Candidate k: mean of K over the evaluable samples.
  const auto pts = sample_points(s.region);
  double sum = 0.0, minv = 0.0, maxv = 0.0;
  int n = 0;
  for (const auto& pt : pts) {
    double v;
    try {
      v = eval(s.curvature, pt.x, pt.u);
    } catch (const DomainError&) {
      continue;
    }
    if (n == 0) {
      minv = maxv = v;
    } else {
      minv = std::min(minv, v);
      maxv = std::max(maxv, v);
    }
    sum += v;
    ++n;
  }
  const double k = sum / n;
  const double max_dev = std::max(std::abs(maxv - k), std::abs(k - minv));
  const ZeroEvidence shifted = is_numerically_zero(
      simplify(s.curvature - num(k)), s.region, tol * (1.0 + std::abs(k)));
  if (shifted.zero && max_dev <= tol * (1.0 + std::abs(k))) {
    c.kind = CurvatureClass::Kind::Constant;
    c.k = k;
    c.max_deviation = std::max(shifted.stats.max_abs, max_dev);
    return c;
  }

  c.kind = CurvatureClass::Kind::NonConstant;
  c.min_value = minv;
  c.max_value = maxv;
  c.mean_value = k;
  c.max_deviation = max_dev;
  return c;
}

}  // namespace odesurf
