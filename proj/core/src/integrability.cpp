#include "odesurf/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "odesurf/errors.hpp"
#include "odesurf/numerics.hpp"

namespace odesurf {

Expr op_T(const Expr& phi, const Expr& eps, const Expr& h) {
  return simplify(apply_A(phi, h) + delta_eps(phi, eps) * h);
}

Expr op_S(const Expr& phi, const Expr& eps, const Expr& h) {
  return simplify(apply_A(phi, h) - delta_eps(phi, eps) * h);
}

Expr closedness_residual(const Expr& phi, const Expr& mu) {
  return simplify(diff(mu, Var::X) + diff(mu * phi, Var::U));
}

Expr perp_component(const Expr& phi, const VectorFieldXY& v) {
  return simplify(v.eta - v.xi * phi);
}

SymmetryCheck lie_symmetry_check(const Expr& phi, const VectorFieldXY& v,
                                 const Region& region, double tol) {
  if (!(tol > 0.0)) throw Error("lie_symmetry_check: tol must be positive");

  // Reject fields pointwise proportional to A = (1, phi): there the
  // perpendicular component eta - xi*phi vanishes.
  const Expr perp = perp_component(phi, v);
  {
    const auto pts = sample_points(region);
    int degenerate = 0, usable = 0;
    for (const auto& p : pts) {
      try {
        const double d = eval(perp, p.x, p.u);
        ++usable;
        if (std::abs(d) <= 1e-10) ++degenerate;
      } catch (const DomainError&) {
      }
    }
    if (usable == 0 || degenerate * 2 > usable)
      throw DegenerateField("lie_symmetry_check: field is proportional to A");
  }

  // [V, A] = (-A(xi), V(phi) - A(eta)); proportionality to A = (1, phi)
  // is decided by the second slot, rho by the first.
  const Expr c1 = simplify(num(-1.0) * apply_A(phi, v.xi));
  const Expr v_of_phi = simplify(v.xi * diff(phi, Var::X) + v.eta * diff(phi, Var::U));
  const Expr c2 = simplify(v_of_phi - apply_A(phi, v.eta));
  const Expr residual = simplify(c2 - c1 * phi);

  SymmetryCheck out;
  const ZeroEvidence z = is_numerically_zero(residual, region, tol);
  out.evidence = z.stats;
  out.is_symmetry = z.zero;
  out.rho = c1;

  if (out.is_symmetry) {
    // Cross-check: rho = -A(g(V, A)) with the undeformed metric,
    // g(V, A) = xi (E + F phi) + eta (F + G phi).
    const Expr me = num(1.0) + pow(phi, 2.0);
    const Expr mf = num(-1.0) * phi;
    const Expr g_va = simplify(v.xi * (me + mf * phi) + v.eta * (mf + phi));
    const Expr rho_alt = simplify(num(-1.0) * apply_A(phi, g_va));
    out.rho_crosscheck_max = residual_sweep(simplify(c1 - rho_alt), region).max_abs;
  }
  return out;
}

Expr delta_for_constant_k(double k) {
  if (k > 0.0) return simplify(sin(num(std::sqrt(k)) * var_x()));
  if (k < 0.0) return simplify(sinh(num(std::sqrt(-k)) * var_x()));
  return num(1.0);
}

std::pair<Expr, Expr> jacobi_residuals(const Expr& phi, const Expr& eps,
                                       const Expr& sigma, const Expr& delta) {
  const Expr k = curvature(phi, eps);
  const Expr r1 = simplify(apply_A(phi, apply_A(phi, sigma)));
  const Expr r2 = simplify(apply_A(phi, apply_A(phi, delta)) + k * delta);
  return {r1, r2};
}

Expr factorization_check(const Expr& phi, const Expr& eps, const Expr& h) {
  const Expr lhs = op_T(phi, eps, op_S(phi, eps, h));
  const Expr rhs = simplify(apply_A(phi, apply_A(phi, h)) + curvature(phi, eps) * h);
  return simplify(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Antiderivative catalog for functions of x alone.

namespace {

struct XSamples {
  std::vector<double> x;
  std::vector<double> g;    // g(x_i)
  std::vector<double> gp;   // g'(x_i), from the exact derivative
  double g_max = 0.0;
};

double snap(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * (1.0 + std::abs(v))) return r;
  return v;
}

// Sample g over the x-range at a fixed u; g must be u-independent here.
bool collect_x_samples(const Expr& g, const Region& r, double u_ref, XSamples* out) {
  const Expr gp = simplify(diff(g, Var::X));
  const int n = 41;
  for (int i = 0; i < n; ++i) {
    const double x = r.x_min + (r.x_max - r.x_min) * (i + 0.5) / n;
    try {
      const double gv = eval(g, x, u_ref);
      const double gpv = eval(gp, x, u_ref);
      out->x.push_back(x);
      out->g.push_back(gv);
      out->gp.push_back(gpv);
      out->g_max = std::max(out->g_max, std::abs(gv));
    } catch (const DomainError&) {
    }
  }
  return out->x.size() >= 10;
}

bool antiderivative_verifies(const Expr& psi, const XSamples& s, double u_ref) {
  const Expr dpsi = simplify(diff(psi, Var::X));
  const double tol = 1e-9 * (1.0 + s.g_max);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    try {
      if (std::abs(eval(dpsi, s.x[i], u_ref) - s.g[i]) > tol) return false;
    } catch (const DomainError&) {
      return false;
    }
  }
  return true;
}

// Least-squares polynomial fit of degree <= max_deg via normal equations.
bool poly_fit(const XSamples& s, int max_deg, std::vector<double>* coeffs) {
  const int m = max_deg + 1;
  std::vector<double> ata(m * m, 0.0), atb(m, 0.0);
  for (std::size_t p = 0; p < s.x.size(); ++p) {
    double powers[16];
    powers[0] = 1.0;
    for (int j = 1; j < m; ++j) powers[j] = powers[j - 1] * s.x[p];
    for (int i = 0; i < m; ++i) {
      atb[i] += powers[i] * s.g[p];
      for (int j = 0; j < m; ++j) ata[i * m + j] += powers[i] * powers[j];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(ata[r * m + col]) > std::abs(ata[piv * m + col])) piv = r;
    if (std::abs(ata[piv * m + col]) < 1e-300) return false;
    if (piv != col) {
      for (int j = 0; j < m; ++j) std::swap(ata[col * m + j], ata[piv * m + j]);
      std::swap(atb[col], atb[piv]);
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = ata[r * m + col] / ata[col * m + col];
      for (int j = 0; j < m; ++j) ata[r * m + j] -= f * ata[col * m + j];
      atb[r] -= f * atb[col];
    }
  }
  coeffs->resize(m);
  for (int i = 0; i < m; ++i) (*coeffs)[i] = snap(atb[i] / ata[i * m + i]);
  return true;
}

std::optional<Expr> try_polynomial(const XSamples& s, double u_ref) {
  std::vector<double> c;
  if (!poly_fit(s, 6, &c)) return std::nullopt;
  // Antiderivative of sum c_j x^j.
  Expr psi = num(0.0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0.0) continue;
    psi = psi + num(c[j] / (j + 1.0)) * pow(var_x(), static_cast<double>(j + 1));
  }
  psi = simplify(psi);
  if (antiderivative_verifies(psi, s, u_ref)) return psi;
  return std::nullopt;
}

// c / (x - a)^n: uses g/g' = (a - x)/n, which is linear in x.
std::optional<Expr> try_simple_pole(const XSamples& s, double u_ref) {
  std::vector<double> h, hx;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (std::abs(s.g[i]) < 1e-12 || std::abs(s.gp[i]) < 1e-12) return std::nullopt;
    h.push_back(s.g[i] / s.gp[i]);
    hx.push_back(s.x[i]);
  }
  // Linear least squares h = alpha + beta x.
  double sx = 0, sh = 0, sxx = 0, sxh = 0;
  const double n_pts = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    sx += hx[i];
    sh += h[i];
    sxx += hx[i] * hx[i];
    sxh += hx[i] * h[i];
  }
  const double denom = n_pts * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return std::nullopt;
  const double beta = (n_pts * sxh - sx * sh) / denom;
  const double alpha = (sh - beta * sx) / n_pts;
  if (std::abs(beta) < 1e-9) return std::nullopt;
  const double n_real = -1.0 / beta;
  const double n_round = std::round(n_real);
  if (n_round < 1.0 || std::abs(n_real - n_round) > 1e-3) return std::nullopt;
  const double a = snap(alpha * n_round);
  const std::size_t mid = s.x.size() / 2;
  const double c = snap(s.g[mid] * std::pow(s.x[mid] - a, n_round));

  Expr psi;
  if (n_round == 1.0) {
    // c ln|x - a|, written on the side of the pole the region lives on.
    psi = (s.x[mid] > a) ? num(c) * ln(var_x() - num(a))
                         : num(c) * ln(num(a) - var_x());
  } else {
    psi = num(-c / (n_round - 1.0)) * pow(var_x() - num(a), -(n_round - 1.0));
  }
  psi = simplify(psi);
  if (antiderivative_verifies(psi, s, u_ref)) return psi;
  return std::nullopt;
}

// c e^{b x}: g'/g constant.
std::optional<Expr> try_exponential(const XSamples& s, double u_ref) {
  double b_sum = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (std::abs(s.g[i]) < 1e-12) return std::nullopt;
    b_sum += s.gp[i] / s.g[i];
  }
  const double b = snap(b_sum / static_cast<double>(s.x.size()));
  if (std::abs(b) < 1e-9) return std::nullopt;
  double c_sum = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) c_sum += s.g[i] * std::exp(-b * s.x[i]);
  const double c = snap(c_sum / static_cast<double>(s.x.size()));
  Expr psi = simplify(num(c / b) * exp(num(b) * var_x()));
  if (antiderivative_verifies(psi, s, u_ref)) return psi;
  return std::nullopt;
}

// c1 sin(b x) + c2 cos(b x): g''/g = -b^2 constant.
std::optional<Expr> try_trig(const XSamples& s, const Expr& g, double u_ref) {
  const Expr gpp_expr = simplify(diff(diff(g, Var::X), Var::X));
  double b2_sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (std::abs(s.g[i]) < 1e-6 * (1.0 + s.g_max)) continue;
    double gpp;
    try {
      gpp = eval(gpp_expr, s.x[i], u_ref);
    } catch (const DomainError&) {
      return std::nullopt;
    }
    b2_sum += -gpp / s.g[i];
    ++n;
  }
  if (n < 5) return std::nullopt;
  const double b2 = b2_sum / n;
  if (!(b2 > 1e-12)) return std::nullopt;
  const double b = snap(std::sqrt(b2));
  // Least squares for c1, c2.
  double a11 = 0, a12 = 0, a22 = 0, r1 = 0, r2 = 0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double sv = std::sin(b * s.x[i]), cv = std::cos(b * s.x[i]);
    a11 += sv * sv;
    a12 += sv * cv;
    a22 += cv * cv;
    r1 += sv * s.g[i];
    r2 += cv * s.g[i];
  }
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-12) return std::nullopt;
  const double c1 = snap((r1 * a22 - r2 * a12) / det);
  const double c2 = snap((r2 * a11 - r1 * a12) / det);
  Expr psi = simplify(num(-c1 / b) * cos(num(b) * var_x()) +
                      num(c2 / b) * sin(num(b) * var_x()));
  if (antiderivative_verifies(psi, s, u_ref)) return psi;
  return std::nullopt;
}

// Symbolic antiderivative of a u-independent g over the region's x-range,
// or nullopt when nothing in the catalog matches.
std::optional<Expr> catalog_antiderivative(const Expr& g, const Region& r,
                                           double u_ref) {
  XSamples s;
  if (!collect_x_samples(g, r, u_ref, &s)) return std::nullopt;
  if (auto psi = try_polynomial(s, u_ref)) return psi;
  if (auto psi = try_simple_pole(s, u_ref)) return psi;
  if (auto psi = try_exponential(s, u_ref)) return psi;
  if (auto psi = try_trig(s, g, u_ref)) return psi;
  return std::nullopt;
}

// Drift of a first integral along RK4 solution trajectories launched from
// the region interior.
double trajectory_drift(const OdeProblem& p,
                        const std::function<double(double, double)>& field) {
  const Region& r = p.region;
  const double xr = r.x_max - r.x_min;
  const double x0 = r.x_min + 0.2 * xr;
  const double x_end = r.x_min + 0.8 * xr;
  const double step = xr / 200.0;
  double drift = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double u0 = r.u_min + (r.u_max - r.u_min) * (0.25 + 0.125 * i);
    Trajectory t;
    try {
      t = solve_ode(p, x0, u0, x_end, step);
    } catch (const LeftDomain& e) {
      t = e.partial();
    } catch (const DomainError&) {
      continue;
    }
    if (t.samples.empty()) continue;
    double f0;
    try {
      f0 = field(t.samples.front().x, t.samples.front().u);
    } catch (const Error&) {
      continue;
    }
    for (std::size_t j = 1; j < t.samples.size(); j += 4) {
      try {
        drift = std::max(drift,
                         std::abs(field(t.samples[j].x, t.samples[j].u) - f0));
      } catch (const Error&) {
      }
    }
  }
  return drift;
}

}  // namespace

// ---------------------------------------------------------------------------

IntegrationReport flat_first_integral(const OdeProblem& p) {
  const Expr phi = simplify(p.phi);
  const SurfaceData surf = build_surface(p, Deformation{});
  const CurvatureClass cls = classify_curvature(surf, 1e-8);
  if (cls.kind != CurvatureClass::Kind::Zero)
    throw NotFlat("flat_first_integral: associated surface is not flat");

  const Expr a_phi = apply_A(phi, phi);
  const Expr a_phi_u = simplify(diff(a_phi, Var::U));
  const double a_phi_scale = residual_sweep(a_phi, p.region).max_abs;
  if (!is_numerically_zero(a_phi_u, p.region, 1e-7 * (1.0 + a_phi_scale)).zero)
    throw NotFlat("flat_first_integral: A(phi) depends on u");

  const double u_ref = 0.5 * (p.region.u_min + p.region.u_max);

  IntegrationReport rep;
  rep.method = IntegrationMethod::FlatDirect;

  // Degenerate phi_u = 0 case: F = phi - Psi collapses to a constant, so
  // fall back to the elementary quadrature F = u - int phi dx.
  const Expr phi_u = simplify(diff(phi, Var::U));
  const double phi_scale = 1.0 + residual_sweep(phi, p.region).max_abs;
  const bool degenerate =
      is_numerically_zero(phi_u, p.region, 1e-10 * phi_scale).zero;
  rep.degenerate_first_integral = degenerate;

  const Expr target = degenerate ? phi : a_phi;  // what Psi must antidifferentiate
  const std::optional<Expr> psi = catalog_antiderivative(target, p.region, u_ref);

  if (psi) {
    const Expr f = degenerate ? simplify(var_u() - *psi) : simplify(phi - *psi);
    rep.first_integral = f;
    rep.residual_first_integral =
        residual_sweep(apply_A(phi, f), p.region).max_abs;
    const Expr fcopy = f;
    rep.numeric_first_integral = std::make_shared<NumericField>(
        [fcopy](double x, double u) { return eval(fcopy, x, u); });
  } else {
    // Numeric Psi(x) = int_{x0}^{x} target(s, u_ref) ds by adaptive Simpson.
    const double x_base = p.region.x_min;
    const Expr target_copy = target;
    const Expr phi_copy = phi;
    auto psi_num = [target_copy, u_ref, x_base](double x) {
      auto f = [&](double s) { return eval(target_copy, s, u_ref); };
      return adaptive_simpson(f, x_base, x, 1e-10);
    };
    std::function<double(double, double)> field;
    if (degenerate) {
      field = [psi_num](double x, double u) { return u - psi_num(x); };
    } else {
      field = [phi_copy, psi_num](double x, double u) {
        return eval(phi_copy, x, u) - psi_num(x);
      };
    }
    rep.numeric_first_integral = std::make_shared<NumericField>(field);
    rep.residual_first_integral = trajectory_drift(p, field);
  }
  return rep;
}

IntegrationReport constant_curvature_integrating_factor(const OdeProblem& p,
                                                        const Deformation& d) {
  const SurfaceData surf = build_surface(p, d);
  const CurvatureClass cls = classify_curvature(surf, 1e-8);
  if (cls.kind == CurvatureClass::Kind::NonConstant)
    throw NotConstantCurvature(
        "constant_curvature_integrating_factor: K_eps is not constant");

  double k = (cls.kind == CurvatureClass::Kind::Zero) ? 0.0 : cls.k;
  // The classified k carries sampling noise; a nearby exact integer is
  // almost surely the true curvature.
  if (std::abs(k - std::round(k)) <= 1e-6 * (1.0 + std::abs(k))) k = std::round(k);

  const Expr delta = delta_for_constant_k(k);
  const Expr s = op_S(surf.phi, surf.epsilon, delta);

  IntegrationReport rep;
  rep.method = IntegrationMethod::ConstantCurvatureDeformation;
  rep.delta_used = delta;

  if (is_numerically_zero(s, p.region, 1e-9).zero) {
    // delta must not vanish on the region if its reciprocal enters mu.
    bool saw_pos = false, saw_neg = false;
    for (const auto& pt : sample_points(p.region)) {
      double dv;
      try {
        dv = eval(delta, pt.x, pt.u);
      } catch (const DomainError&) {
        continue;
      }
      if (std::abs(dv) < 1e-9) saw_pos = saw_neg = true;
      if (dv > 0.0) saw_pos = true;
      if (dv < 0.0) saw_neg = true;
    }
    if (saw_pos && saw_neg)
      throw DeltaVanishesOnRegion(
          "constant_curvature_integrating_factor: delta has a zero inside the "
          "region; shrink the region");
    rep.branch = Branch::SVanishes;
    rep.mu = simplify(exp(surf.epsilon) / delta);
  } else {
    rep.branch = Branch::SNonvanishing;
    rep.mu = simplify(exp(surf.epsilon) * s);
  }

  const double mu_scale = residual_sweep(*rep.mu, p.region).max_abs;
  rep.residual_closedness =
      residual_sweep(closedness_residual(surf.phi, *rep.mu), p.region).max_abs;
  if (rep.residual_closedness > 1e-7 * (1.0 + mu_scale))
    throw VerificationFailed(
        "constant_curvature_integrating_factor: produced mu failed the "
        "closedness check");

  // First integral by quadrature from the region center.
  const double cx = 0.5 * (p.region.x_min + p.region.x_max);
  const double cu = 0.5 * (p.region.u_min + p.region.u_max);
  rep.basepoint_x = cx;
  rep.basepoint_u = cu;
  try {
    QuadratureReport q = first_integral_from_mu(p, *rep.mu, cx, cu);
    rep.numeric_first_integral = q.field;
    rep.residual_first_integral = q.max_drift;
  } catch (const Error&) {
    // The factor itself verified; a quadrature path through a singular
    // point only costs us the numeric field.
  }
  return rep;
}

QuadratureReport first_integral_from_mu(const OdeProblem& p, const Expr& mu,
                                        double x0, double u0) {
  const Expr phi = simplify(p.phi);
  const Expr mu_s = simplify(mu);
  const double mu_scale = residual_sweep(mu_s, p.region).max_abs;
  const double res =
      residual_sweep(closedness_residual(phi, mu_s), p.region).max_abs;
  if (res > 1e-7 * (1.0 + mu_scale))
    throw NotAnIntegratingFactor(
        "first_integral_from_mu: closedness residual is not numerically zero");
  try {
    eval(mu_s, x0, u0);
  } catch (const DomainError&) {
    throw Error("first_integral_from_mu: basepoint not evaluable");
  }

  auto field_fn = [mu_s, phi, x0, u0](double x, double u) {
    try {
      const double leg_u = adaptive_simpson(
          [&](double t) { return eval(mu_s, x0, t); }, u0, u, 1e-10);
      const double leg_x = adaptive_simpson(
          [&](double s) { return eval(mu_s, s, u) * eval(phi, s, u); }, x0, x,
          1e-10);
      return leg_u - leg_x;
    } catch (const DomainError& e) {
      throw PathCrossesSingularity(std::string("first_integral_from_mu: ") +
                                   e.what());
    }
  };

  QuadratureReport q;
  q.field = std::make_shared<NumericField>(field_fn);
  q.max_drift = trajectory_drift(p, field_fn);
  return q;
}

}  // namespace odesurf
