#pragma once

#include <stdexcept>
#include <string>

namespace friedmann {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// Cubic/regime analysis is matter-only; a nonzero radiation coefficient
/// has no place there.
class RadiationNotSupported : public Error {
public:
  using Error::Error;
};

/// |D| fell inside the degeneracy band. Carries the computed discriminant
/// so callers can still report it.
class DegenerateDiscriminant : public Error {
public:
  DegenerateDiscriminant(std::string msg, double d)
      : Error(std::move(msg)), discriminant_(d) {}

  double discriminant() const noexcept { return discriminant_; }

private:
  double discriminant_;
};

/// Operation requested outside the regime it applies to.
class WrongRegime : public Error {
public:
  using Error::Error;
};

/// Integration start inside the forbidden interval (rhs of the evolution
/// equation negative beyond rounding).
class ForbiddenStart : public Error {
public:
  using Error::Error;
};

/// Extremum search over a trajectory found only monotone samples.
class NoExtremumInSpan : public Error {
public:
  using Error::Error;
};

} // namespace friedmann
