#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qtrack/polynomial.hpp"

namespace qtrack {

/// One point of a frequency response: the value of a rational function at
/// s = j*omega.
struct ComplexFrequencyPoint {
  double omega = 0.0;
  std::complex<double> value;
};

/// Scalar rational function num(s)/den(s) of the Laplace variable.
///
/// The denominator is never the zero polynomial.  A zero numerator is
/// canonicalized to 0/1.  Arithmetic (operator+ / operator*) returns reduced
/// results: common factors cancelled and the denominator monic.
class TransferFunction {
 public:
  /// The zero function 0/1.
  TransferFunction();
  /// Throws ZeroPolynomial if den is zero.
  TransferFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// deg(den) - deg(num).  Meaningless (large) for the zero function.
  int relative_degree() const;
  bool is_proper() const { return relative_degree() >= 0; }
  bool is_strictly_proper() const { return relative_degree() >= 1; }

  /// Plain complex Horner evaluation.  Throws PoleAtFrequency when s is
  /// numerically indistinguishable from a pole.
  std::complex<double> eval(std::complex<double> s) const;
  /// Evaluation at s = j*omega with compensated polynomial kernels.
  std::complex<double> eval_jomega(double omega) const;
  /// Cancellation-safe Re{H(j*omega)}: used by passivity sweeps, where the
  /// naive real part of a complex quotient loses its sign near lightly
  /// damped poles.
  double real_part_jomega(double omega) const;

  std::vector<std::complex<double>> poles() const { return roots(den_); }
  std::vector<std::complex<double>> zeros() const { return roots(num_); }

  /// Cancels numerator/denominator root pairs closer than
  /// 1e-8 * (1 + largest root magnitude) and returns the result with a monic
  /// denominator.  Structural zero roots (exactly zero trailing constant
  /// coefficients on both sides) are cancelled exactly by shifting, so an
  /// origin pole survives division bit-for-bit.
  TransferFunction reduced() const;

  /// 1/H.  Throws ZeroPolynomial for the zero function.
  TransferFunction inverse() const;

  friend TransferFunction operator+(const TransferFunction& a, const TransferFunction& b);
  friend TransferFunction operator-(const TransferFunction& a, const TransferFunction& b);
  friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);
  friend TransferFunction operator/(const TransferFunction& a, const TransferFunction& b);
  friend TransferFunction operator*(const TransferFunction& a, double scale);
  friend TransferFunction operator*(double scale, const TransferFunction& a);

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Unit constant 1/1.
TransferFunction tf_one();
/// Pure integrator 1/s.
TransferFunction tf_integrator();

}  // namespace qtrack
