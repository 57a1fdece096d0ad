#ifndef ODESURF_REGION_HPP
#define ODESURF_REGION_HPP

#include <cstdint>
#include <vector>

#include "odesurf/expr.hpp"

namespace odesurf {

// Rectangular sample region; realizes the open set the expressions live on.
struct Region {
  double x_min = -1.0;
  double x_max = 1.0;
  double u_min = -1.0;
  double u_max = 1.0;
  int grid_n = 33;        // samples per axis
  std::uint64_t seed = 42;  // for the supplementary random points

  void validate() const;  // throws Error on a malformed region
};

struct SamplePoint {
  double x;
  double u;
};

// grid_n x grid_n lattice (bounds inclusive) plus 64 seeded random points.
std::vector<SamplePoint> sample_points(const Region& r);

// Statistics of |e| over the sample points of a region.
struct SweepStats {
  double max_abs = 0.0;
  SamplePoint argmax{0.0, 0.0};
  double mean_abs = 0.0;
  int skipped = 0;    // points where eval raised DomainError
  int evaluated = 0;
};

// Evidence attached to a numeric zero test.
struct ZeroEvidence {
  bool zero = false;
  SweepStats stats;
};

// True iff |eval(e)| <= tol at every evaluable sample point.  Throws
// RegionUnusable when fewer than half of the points are evaluable.
ZeroEvidence is_numerically_zero(const Expr& e, const Region& r, double tol);

// The sweep itself; same evaluability rule as is_numerically_zero.
SweepStats residual_sweep(const Expr& e, const Region& r);

}  // namespace odesurf

#endif  // ODESURF_REGION_HPP
