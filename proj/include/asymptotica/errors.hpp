#pragma once

#include <stdexcept>
#include <string>

namespace asym {

/// Base of every library error that a caller may want to map to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Geometric preconditions.
class DegenerateFrame : public Error {
 public:
  using Error::Error;
};
class NotFiniteType : public Error {
 public:
  using Error::Error;
};
class NotSimple : public Error {
 public:
  using Error::Error;
};
class InflectionOfProjection : public Error {
 public:
  using Error::Error;
};

// Plane-field preconditions.
class ZeroField : public Error {
 public:
  using Error::Error;
};
class ZeroDirection : public Error {
 public:
  using Error::Error;
};
class NotInPlane : public Error {
 public:
  using Error::Error;
};
class Vanishing : public Error {
 public:
  using Error::Error;
};

// Numerical failures.
class ReductionSingular : public Error {
 public:
  using Error::Error;
};
class ParabolicOnCurve : public Error {
 public:
  using Error::Error;
};
class AffineSolveError : public Error {
 public:
  using Error::Error;
};
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace asym
