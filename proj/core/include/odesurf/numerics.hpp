#ifndef ODESURF_NUMERICS_HPP
#define ODESURF_NUMERICS_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"
#include "odesurf/surface.hpp"

namespace odesurf {

struct TrajectorySample {
  double x;
  double u;
  double uprime;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // strictly increasing x
  double step = 0.0;
  std::string method;
};

// Trajectory left the evaluable neighborhood; carries what was computed.
class LeftDomain : public Error {
 public:
  LeftDomain(const std::string& what, Trajectory partial)
      : Error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

// Fixed-step RK4 on u' = phi, with local step halving when the boundary
// of the domain is approached.  Throws LeftDomain when halving bottoms out.
Trajectory solve_ode(const OdeProblem& p, double x0, double u0, double x_end,
                     double step);

// RK4 on the pregeodesic equation u'' = A(phi) - phi_u (u' - phi)^3,
// as a first-order system in (u, u').  Aborts (LeftDomain) when |u'|
// exceeds 1e6; the cubic term can blow up in finite x.
Trajectory solve_pregeodesic(const OdeProblem& p, double x0, double u0,
                             double slope0, double x_end, double step);

// Brioschi curvature from E, F, G by central finite differences with
// spacing h, Richardson-extrapolated (h, h/2) to cancel the O(h^2) term.
// Throws StencilLeftDomain when a stencil point is not evaluable.
double brioschi_curvature(const SurfaceData& s, double x, double u, double h);

// Covariant derivative in the orthonormal frame with structure
// coefficients (T^1_12, T^2_12) = (0, delta):
//   component1 = D(y1) + delta a2 y2,  component2 = D(y2) - delta a2 y1,
// where a = tangent components and D(y) = field_derivs.
std::array<double, 2> covariant_derivative_frame(double delta_value,
                                                 std::array<double, 2> tangent,
                                                 std::array<double, 2> field,
                                                 std::array<double, 2> field_derivs);

// Adaptive Simpson quadrature; DomainError from f propagates.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

// CSV with header "x,u,uprime", 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

}  // namespace odesurf

#endif  // ODESURF_NUMERICS_HPP
