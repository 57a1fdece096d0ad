#ifndef ODESURF_INTEGRABILITY_HPP
#define ODESURF_INTEGRABILITY_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "odesurf/expr.hpp"
#include "odesurf/region.hpp"
#include "odesurf/surface.hpp"

namespace odesurf {

// The field xi d_x + eta d_u.
struct VectorFieldXY {
  Expr xi;
  Expr eta;
};

// T(h) = A(h) + delta_eps h.  Kernel elements scaled by e^eps are
// integrating factors.
Expr op_T(const Expr& phi, const Expr& eps, const Expr& h);

// S(h) = A(h) - delta_eps h.  Non-vanishing kernel elements scaled by
// e^{-eps} are symmetrizing factors for d_u.
Expr op_S(const Expr& phi, const Expr& eps, const Expr& h);

// r(mu) = mu_x + (mu phi)_u; mu is an integrating factor iff r == 0.
Expr closedness_residual(const Expr& phi, const Expr& mu);

// Coefficient of the A-orthogonal part of V: V_perp = (eta - xi phi) d_u.
Expr perp_component(const Expr& phi, const VectorFieldXY& v);

struct SymmetryCheck {
  bool is_symmetry = false;
  Expr rho;                   // [V, A] = rho A (valid when is_symmetry)
  SweepStats evidence;        // sweep of the proportionality residual
  double rho_crosscheck_max = 0.0;  // |rho + A(g(V,A))| max over the region
};

// Symmetry test via [V, A] proportional to A = (1, phi); rho is the first
// commutator component and is cross-checked against -A(g(V, A)).
// Throws DegenerateField when V is pointwise proportional to A.
SymmetryCheck lie_symmetry_check(const Expr& phi, const VectorFieldXY& v,
                                 const Region& region, double tol);

// Representative solution of delta'' + k delta = 0:
// sin(sqrt(k) x) for k > 0, 1 for k = 0, sinh(sqrt(-k) x) for k < 0.
Expr delta_for_constant_k(double k);

// Residual pair (A^2(sigma), A^2(delta) + K_eps delta); the field
// sigma A + delta e^{-eps} d_u is a Jacobi field relative to A iff both
// vanish.
std::pair<Expr, Expr> jacobi_residuals(const Expr& phi, const Expr& eps,
                                       const Expr& sigma, const Expr& delta);

// T(S(h)) - (A(A(h)) + K_eps h); identically zero for every h.
Expr factorization_check(const Expr& phi, const Expr& eps, const Expr& h);

// First integral available only through quadrature.
class NumericField {
 public:
  explicit NumericField(std::function<double(double, double)> f) : f_(std::move(f)) {}
  double operator()(double x, double u) const { return f_(x, u); }

 private:
  std::function<double(double, double)> f_;
};

enum class IntegrationMethod { FlatDirect, ConstantCurvatureDeformation, UserSuppliedMu };
enum class Branch { None, SVanishes, SNonvanishing };

struct IntegrationReport {
  IntegrationMethod method = IntegrationMethod::FlatDirect;
  Branch branch = Branch::None;
  std::optional<Expr> mu;
  std::optional<Expr> first_integral;  // symbolic form, when one was found
  std::shared_ptr<NumericField> numeric_first_integral;
  std::optional<Expr> delta_used;
  double residual_closedness = 0.0;      // max over region
  double residual_first_integral = 0.0;  // max |A(F)| or trajectory drift
  bool degenerate_first_integral = false;
  double basepoint_x = 0.0;
  double basepoint_u = 0.0;
};

// Flat case: F = phi - Psi with Psi' = A(phi).  Psi comes from a small
// antiderivative catalog (polynomials, c/(x-a)^n, c e^{bx}, trig) or from
// adaptive quadrature.  Throws NotFlat when K_0 is not numerically zero.
IntegrationReport flat_first_integral(const OdeProblem& p);

// Constant-curvature case: delta from delta_for_constant_k, then either
// mu = e^eps / delta (S(delta) == 0) or mu = e^eps S(delta).
// Throws NotConstantCurvature / DeltaVanishesOnRegion / VerificationFailed.
IntegrationReport constant_curvature_integrating_factor(const OdeProblem& p,
                                                        const Deformation& d);

struct QuadratureReport {
  std::shared_ptr<NumericField> field;
  double max_drift = 0.0;  // |F - F(basepoint trajectory start)| along solutions
};

// F(x,u) = int_{u0}^{u} mu(x0,t) dt - int_{x0}^{x} mu(s,u) phi(s,u) ds
// (L-shaped path, x-leg last) plus the drift of F along 5 RK4 solution
// trajectories.  Throws NotAnIntegratingFactor / PathCrossesSingularity.
QuadratureReport first_integral_from_mu(const OdeProblem& p, const Expr& mu,
                                        double x0, double u0);

}  // namespace odesurf

#endif  // ODESURF_INTEGRABILITY_HPP
