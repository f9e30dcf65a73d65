#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace qtrack {

/// Real polynomial in the Laplace variable s, stored as coefficients in
/// ascending powers: coeffs[k] multiplies s^k.
///
/// The representation is kept normalized: the highest-power coefficient is
/// nonzero, and the zero polynomial is the empty coefficient list.  degree()
/// of the zero polynomial is -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of s^k; zero beyond the stored degree.
  double coeff(int k) const;
  /// Highest-power coefficient; zero for the zero polynomial.
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> s) const;
  /// Evaluation at s = j*omega.  Uses compensated even/odd Horner so the
  /// real and imaginary parts stay faithful even near roots on the axis.
  std::complex<double> eval_jomega(double omega) const;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(double scale);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial lhs, double scale) {
    lhs *= scale;
    return lhs;
  }
  friend Polynomial operator*(double scale, Polynomial rhs) {
    rhs *= scale;
    return rhs;
  }

  bool operator==(const Polynomial&) const = default;

 private:
  void trim();

  std::vector<double> coeffs_;
};

/// All complex roots of p.  Exact zero roots are peeled off by shifting;
/// the rest come from a balanced companion-matrix eigensolve.
/// Throws ZeroPolynomial for the zero polynomial and NoConvergence if the
/// eigenvalue iteration fails.  A degree-0 polynomial has no roots.
std::vector<std::complex<double>> roots(const Polynomial& p);

/// Rebuild a real polynomial from its roots and leading coefficient.
/// Complex roots must occur in (approximately) conjugate pairs; each pair is
/// expanded into a real quadratic factor.
Polynomial from_roots(std::span<const std::complex<double>> roots,
                      double leading = 1.0);

/// Polynomial long division: returns {quotient, remainder} with
/// num == quotient * den + remainder and deg(remainder) < deg(den).
/// Throws ZeroPolynomial if den is zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& num,
                                         const Polynomial& den);

}  // namespace qtrack
