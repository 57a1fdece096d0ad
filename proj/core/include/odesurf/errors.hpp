#ifndef ODESURF_ERRORS_HPP
#define ODESURF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odesurf {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text; `offset` is the byte position of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A name that is neither a variable nor a known function.
class UnknownIdentifier : public SyntaxError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : SyntaxError("unknown identifier '" + name + "'", offset) {}
};

// Evaluation left the domain of some function (ln of a non-positive
// value, division by zero, lambert_w below -1/e, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Fewer than half of the sample points of a region were evaluable.
class RegionUnusable : public Error {
 public:
  explicit RegionUnusable(const std::string& what) : Error(what) {}
};

// Candidate symmetry field is pointwise proportional to A.
class DegenerateField : public Error {
 public:
  explicit DegenerateField(const std::string& what) : Error(what) {}
};

// flat_first_integral called on a surface that is not flat.
class NotFlat : public Error {
 public:
  explicit NotFlat(const std::string& what) : Error(what) {}
};

class NotConstantCurvature : public Error {
 public:
  explicit NotConstantCurvature(const std::string& what) : Error(what) {}
};

// The S_vanishes branch was taken but delta has a zero inside the region.
class DeltaVanishesOnRegion : public Error {
 public:
  explicit DeltaVanishesOnRegion(const std::string& what) : Error(what) {}
};

// Quadrature path hit a DomainError.
class PathCrossesSingularity : public Error {
 public:
  explicit PathCrossesSingularity(const std::string& what) : Error(what) {}
};

// Supplied mu failed the closedness precondition.
class NotAnIntegratingFactor : public Error {
 public:
  explicit NotAnIntegratingFactor(const std::string& what) : Error(what) {}
};

// A residual the pipeline produced itself did not verify.
class VerificationFailed : public Error {
 public:
  explicit VerificationFailed(const std::string& what) : Error(what) {}
};

// Finite-difference stencil touched a non-evaluable point.
class StencilLeftDomain : public Error {
 public:
  explicit StencilLeftDomain(const std::string& what) : Error(what) {}
};

}  // namespace odesurf

#endif  // ODESURF_ERRORS_HPP
