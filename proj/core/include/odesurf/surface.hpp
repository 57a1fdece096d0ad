#ifndef ODESURF_SURFACE_HPP
#define ODESURF_SURFACE_HPP

#include "odesurf/expr.hpp"
#include "odesurf/region.hpp"

namespace odesurf {

// A first-order ODE u' = phi(x, u) on a rectangular sample region.
struct OdeProblem {
  Expr phi;
  Region region;
};

// Conformal-style deformation of the associated metric, epsilon = epsilon(x, u).
struct Deformation {
  Expr epsilon = num(0.0);
};

// The associated surface for a given deformation: metric components in
// (x, u) coordinates, the structure function delta, and Gaussian curvature.
// Coframe: w1 = dx, w2 = e^eps (-phi dx + du).
struct SurfaceData {
  Expr phi;
  Expr epsilon;
  Region region;
  Expr E;          // 1 + phi^2 e^{2 eps}
  Expr F;          // -phi e^{2 eps}
  Expr G;          // e^{2 eps}
  Expr delta_eps;  // A(eps) + phi_u
  Expr curvature;  // -A(delta) - delta^2
};

// A(h) = h_x + phi h_u, simplified.
Expr apply_A(const Expr& phi, const Expr& h);

// delta_eps = A(eps) + phi_u, simplified.
Expr delta_eps(const Expr& phi, const Expr& eps);

// Gaussian curvature K_eps = -A(delta_eps) - delta_eps^2, simplified.
Expr curvature(const Expr& phi, const Expr& eps);

// Density of the volume form e^eps dx ^ du.
Expr volume_form_density(const Expr& eps);

// Builds the surface and checks its invariants on the region:
// positive-definiteness, the frame relations E + F*phi = 1 and
// F + G*phi = 0, and (at eps = 0) agreement of the frame-formula
// curvature with -d_u(A(phi)) to 1e-9 pointwise.
SurfaceData build_surface(const OdeProblem& p, const Deformation& d);

struct CurvatureClass {
  enum class Kind { Zero, Constant, NonConstant };
  Kind kind = Kind::NonConstant;
  double k = 0.0;           // Constant verdict
  double max_deviation = 0.0;  // from 0 or from k
  double min_value = 0.0;   // NonConstant statistics
  double max_value = 0.0;
  double mean_value = 0.0;
  SweepStats sweep;         // underlying curvature sweep
};

// Zero if K is numerically zero; Constant(k) if K - mean is numerically
// zero at scale-adjusted tolerance tol*(1+|k|); NonConstant otherwise.
CurvatureClass classify_curvature(const SurfaceData& s, double tol);

}  // namespace odesurf

#endif  // ODESURF_SURFACE_HPP
