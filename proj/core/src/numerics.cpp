#include "odesurf/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace odesurf {

namespace {

constexpr double kSlopeBlowup = 1e6;

// One RK4 step of u' = f(x, u); DomainError from f propagates.
template <typename F>
double rk4_step(const F& f, double x, double u, double h) {
  const double k1 = f(x, u);
  const double k2 = f(x + 0.5 * h, u + 0.5 * h * k1);
  const double k3 = f(x + 0.5 * h, u + 0.5 * h * k2);
  const double k4 = f(x + h, u + h * k3);
  return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// One RK4 step of a 2-component system.
template <typename F>
std::array<double, 2> rk4_step2(const F& f, double x, std::array<double, 2> y, double h) {
  const auto k1 = f(x, y);
  const auto k2 = f(x + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
  const auto k3 = f(x + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
  const auto k4 = f(x + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
  return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

}  // namespace

Trajectory solve_ode(const OdeProblem& p, double x0, double u0, double x_end,
                     double step) {
  if (!(step > 0.0)) throw Error("solve_ode: step must be positive");
  if (!(x_end > x0)) throw Error("solve_ode: x_end must exceed x0");

  const Expr phi = p.phi;
  auto f = [&phi](double x, double u) { return eval(phi, x, u); };

  Trajectory t;
  t.step = step;
  t.method = "rk4";
  double x = x0, u = u0;
  t.samples.push_back({x, u, f(x, u)});

  const double min_h = step / 1024.0;
  while (x < x_end - 1e-15) {
    double h = std::min(step, x_end - x);
    // The last partial step may legitimately be below min_h.
    const double floor_h = std::min(min_h, h);
    bool advanced = false;
    while (h >= 0.999 * floor_h) {
      try {
        const double un = rk4_step(f, x, u, h);
        const double up = f(x + h, un);
        x += h;
        u = un;
        t.samples.push_back({x, u, up});
        advanced = true;
        break;
      } catch (const DomainError&) {
        h *= 0.5;  // boundary approached; shrink the step
      }
    }
    if (!advanced)
      throw LeftDomain("solve_ode: trajectory left the evaluable domain", std::move(t));
  }
  return t;
}

Trajectory solve_pregeodesic(const OdeProblem& p, double x0, double u0,
                             double slope0, double x_end, double step) {
  if (!(step > 0.0)) throw Error("solve_pregeodesic: step must be positive");
  if (!(x_end > x0)) throw Error("solve_pregeodesic: x_end must exceed x0");
  if (!std::isfinite(slope0)) throw Error("solve_pregeodesic: slope0 must be finite");

  const Expr phi = p.phi;
  const Expr a_phi = apply_A(phi, phi);
  const Expr phi_u = simplify(diff(phi, Var::U));

  auto f = [&](double x, std::array<double, 2> y) -> std::array<double, 2> {
    const double pv = eval(phi, x, y[0]);
    const double d = y[1] - pv;
    return {y[1], eval(a_phi, x, y[0]) - eval(phi_u, x, y[0]) * d * d * d};
  };

  Trajectory t;
  t.step = step;
  t.method = "pregeodesic-rk4";
  double x = x0;
  std::array<double, 2> y = {u0, slope0};
  t.samples.push_back({x, y[0], y[1]});

  const double min_h = step / 1024.0;
  while (x < x_end - 1e-15) {
    double h = std::min(step, x_end - x);
    const double floor_h = std::min(min_h, h);
    bool advanced = false;
    while (h >= 0.999 * floor_h) {
      try {
        const auto yn = rk4_step2(f, x, y, h);
        if (std::abs(yn[1]) > kSlopeBlowup)
          throw LeftDomain("solve_pregeodesic: slope blow-up", std::move(t));
        x += h;
        y = yn;
        t.samples.push_back({x, y[0], y[1]});
        advanced = true;
        break;
      } catch (const DomainError&) {
        h *= 0.5;
      }
    }
    if (!advanced)
      throw LeftDomain("solve_pregeodesic: trajectory left the evaluable domain",
                       std::move(t));
  }
  return t;
}

namespace {

double brioschi_once(const SurfaceData& s, double x, double u, double h) {
  auto E = [&](double a, double b) { return eval(s.E, a, b); };
  auto F = [&](double a, double b) { return eval(s.F, a, b); };
  auto G = [&](double a, double b) { return eval(s.G, a, b); };

  double Ev, Fv, Gv;
  double E_x, E_u, E_uu, F_x, F_u, F_xu, G_x, G_u, G_xx;
  try {
    Ev = E(x, u);
    Fv = F(x, u);
    Gv = G(x, u);
    E_x = (E(x + h, u) - E(x - h, u)) / (2 * h);
    E_u = (E(x, u + h) - E(x, u - h)) / (2 * h);
    E_uu = (E(x, u + h) - 2 * Ev + E(x, u - h)) / (h * h);
    F_x = (F(x + h, u) - F(x - h, u)) / (2 * h);
    F_u = (F(x, u + h) - F(x, u - h)) / (2 * h);
    F_xu = (F(x + h, u + h) - F(x + h, u - h) - F(x - h, u + h) + F(x - h, u - h)) /
           (4 * h * h);
    G_x = (G(x + h, u) - G(x - h, u)) / (2 * h);
    G_u = (G(x, u + h) - G(x, u - h)) / (2 * h);
    G_xx = (G(x + h, u) - 2 * Gv + G(x - h, u)) / (h * h);
  } catch (const DomainError& e) {
    throw StencilLeftDomain(std::string("brioschi_curvature: ") + e.what());
  }

  auto det3 = [](double a11, double a12, double a13, double a21, double a22,
                 double a23, double a31, double a32, double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };

  const double m1 = det3(-0.5 * E_uu + F_xu - 0.5 * G_xx, 0.5 * E_x, F_x - 0.5 * E_u,
                         F_u - 0.5 * G_x, Ev, Fv,
                         0.5 * G_u, Fv, Gv);
  const double m2 = det3(0.0, 0.5 * E_u, 0.5 * G_x,
                         0.5 * E_u, Ev, Fv,
                         0.5 * G_x, Fv, Gv);
  const double det_g = Ev * Gv - Fv * Fv;
  return (m1 - m2) / (det_g * det_g);
}

}  // namespace

double brioschi_curvature(const SurfaceData& s, double x, double u, double h) {
  if (!(h > 0.0)) throw Error("brioschi_curvature: h must be positive");
  const double kh = brioschi_once(s, x, u, h);
  const double kh2 = brioschi_once(s, x, u, 0.5 * h);
  return (4.0 * kh2 - kh) / 3.0;
}

std::array<double, 2> covariant_derivative_frame(double delta_value,
                                                 std::array<double, 2> tangent,
                                                 std::array<double, 2> field,
                                                 std::array<double, 2> field_derivs) {
  return {field_derivs[0] + delta_value * tangent[1] * field[1],
          field_derivs[1] - delta_value * tangent[1] * field[0]};
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "x,u,uprime\n";
  char buf[256];
  for (const auto& s : t.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s.x, s.u, s.uprime);
    os << buf;
  }
}

}  // namespace odesurf
