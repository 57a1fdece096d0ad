#include "odesurf/region.hpp"

#include <cmath>
#include <random>

#include "odesurf/errors.hpp"

namespace odesurf {

void Region::validate() const {
  if (!(x_min < x_max) || !(u_min < u_max))
    throw Error("Region: bounds must satisfy x_min < x_max and u_min < u_max");
  if (grid_n < 2) throw Error("Region: grid_n must be at least 2");
}

std::vector<SamplePoint> sample_points(const Region& r) {
  r.validate();
  std::vector<SamplePoint> pts;
  pts.reserve(static_cast<std::size_t>(r.grid_n) * r.grid_n + 64);
  const double dx = (r.x_max - r.x_min) / (r.grid_n - 1);
  const double du = (r.u_max - r.u_min) / (r.grid_n - 1);
  for (int i = 0; i < r.grid_n; ++i)
    for (int j = 0; j < r.grid_n; ++j)
      pts.push_back({r.x_min + i * dx, r.u_min + j * du});
  std::mt19937_64 rng(r.seed);
  std::uniform_real_distribution<double> ux(r.x_min, r.x_max);
  std::uniform_real_distribution<double> uu(r.u_min, r.u_max);
  for (int k = 0; k < 64; ++k) {
    const double x = ux(rng);
    const double u = uu(rng);
    pts.push_back({x, u});
  }
  return pts;
}

SweepStats residual_sweep(const Expr& e, const Region& r) {
  const auto pts = sample_points(r);
  SweepStats s;
  double sum = 0.0;
  for (const auto& p : pts) {
    double v;
    try {
      v = eval(e, p.x, p.u);
    } catch (const DomainError&) {
      ++s.skipped;
      continue;
    }
    ++s.evaluated;
    const double a = std::abs(v);
    sum += a;
    if (a > s.max_abs || s.evaluated == 1) {
      s.max_abs = a;
      s.argmax = p;
    }
  }
  if (s.evaluated * 2 < static_cast<int>(pts.size()))
    throw RegionUnusable("fewer than half of the sample points are evaluable");
  s.mean_abs = sum / s.evaluated;
  return s;
}

ZeroEvidence is_numerically_zero(const Expr& e, const Region& r, double tol) {
  if (!(tol > 0.0)) throw Error("is_numerically_zero: tol must be positive");
  ZeroEvidence z;
  z.stats = residual_sweep(e, r);
  z.zero = z.stats.max_abs <= tol;
  return z;
}

}  // namespace odesurf
