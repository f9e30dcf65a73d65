#pragma once

#include <stdexcept>
#include <string>

namespace qtrack {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation that needs a nonzero polynomial received the zero polynomial.
class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

/// The eigenvalue iteration backing a root solve did not converge.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A frequency-response evaluation landed on (or numerically indistinguishably
/// close to) a pole of the rational function.
class PoleAtFrequency : public Error {
 public:
  using Error::Error;
};

/// A state-space realization was requested for a non-proper rational function.
class ImproperTransferFunction : public Error {
 public:
  using Error::Error;
};

/// crossing_value() was asked about two quantizer regions that do not share a
/// boundary.
class NonAdjacentRegions : public Error {
 public:
  using Error::Error;
};

/// A design composition violates one of its admissibility constraints.
/// `constraint()` identifies which one (1 = nonnegative gains, 2 = first-order
/// pole positivity, 3 = second-order coefficient bounds).
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(int constraint, const std::string& what)
      : Error(what), constraint_(constraint) {}
  int constraint() const { return constraint_; }

 private:
  int constraint_;
};

/// Controller synthesis could not reach a proper controller by pole padding.
class ImproperUnfixable : public Error {
 public:
  using Error::Error;
};

/// Controller synthesis would cancel plant dynamics in the closed right half
/// plane, which hides an internal instability.
class UnstableCancellation : public Error {
 public:
  using Error::Error;
};

/// A simulated signal exceeded the divergence bound; the loop is unstable or
/// misconfigured.
class NumericalDivergence : public Error {
 public:
  NumericalDivergence(const std::string& what, double t, double value)
      : Error(what), time_(t), value_(value) {}
  double time() const { return time_; }
  double value() const { return value_; }

 private:
  double time_;
  double value_;
};

/// Crossing detection found no quantization-boundary crossings at all.
class NoCrossings : public Error {
 public:
  using Error::Error;
};

}  // namespace qtrack
