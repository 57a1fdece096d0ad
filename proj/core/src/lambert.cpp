#include "odesurf/lambert.hpp"

#include <cmath>

#include "odesurf/errors.hpp"

namespace odesurf {

double lambert_w(double x) {
  const double branch_point = -std::exp(-1.0);
  if (x < branch_point) {
    // Allow for rounding right at the branch point.
    if (x > branch_point - 1e-14) return -1.0;
    throw DomainError("lambert_w: argument below -1/e");
  }
  if (x == 0.0) return 0.0;

  // Initial guess.
  double w;
  if (x < 0.0) {
    // Series around the branch point.
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    // Halley degenerates at w = -1; the series is already accurate there.
    if (p < 1e-6) return w;
  } else if (x > std::exp(1.0)) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  } else {
    w = std::log1p(x) * 0.7;
  }

  // Halley iteration on f(w) = w e^w - x.
  for (int i = 0; i < 60; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double fp = ew * (w + 1.0);
    const double denom = fp - f * (w + 2.0) / (2.0 * (w + 1.0));
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 1e-14 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace odesurf
