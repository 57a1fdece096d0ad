#ifndef ODESURF_LAMBERT_HPP
#define ODESURF_LAMBERT_HPP

namespace odesurf {

// Principal branch W0 of the Lambert function, W(x) e^{W(x)} = x,
// defined for x >= -1/e.  Halley iteration to relative tolerance 1e-14.
// Throws DomainError below -1/e.
double lambert_w(double x);

}  // namespace odesurf

#endif  // ODESURF_LAMBERT_HPP
