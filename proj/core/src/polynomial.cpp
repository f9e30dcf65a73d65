#include "qtrack/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstddef>

#include "qtrack/compensated.hpp"
#include "qtrack/errors.hpp"

namespace qtrack {

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : coeffs_(coeffs) {
  trim();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::constant(double c) { return Polynomial{c}; }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::eval(double x) const {
  double r = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
  return r;
}

std::complex<double> Polynomial::eval(std::complex<double> s) const {
  std::complex<double> r = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * s + coeffs_[i];
  return r;
}

std::complex<double> Polynomial::eval_jomega(double omega) const {
  // p(j*w) = E(-w^2) + j*w*O(-w^2) where E and O collect the even- and
  // odd-power coefficients.  Both are real Horner evaluations, done
  // compensated because they alternate in sign and cancel near axis roots.
  std::vector<double> even, odd;
  even.reserve((coeffs_.size() + 1) / 2);
  odd.reserve(coeffs_.size() / 2);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k % 2 == 0) {
      even.push_back(coeffs_[k]);
    } else {
      odd.push_back(coeffs_[k]);
    }
  }
  const double x = -(omega * omega);
  const double re = compensated_horner(even, x);
  const double im = omega * compensated_horner(odd, x);
  return {re, im};
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return Polynomial{};
  std::vector<double> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      c[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  trim();
  return *this;
}

std::vector<std::complex<double>> roots(const Polynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("roots: zero polynomial has no defined root set");
  std::vector<double> c = p.coefficients();

  std::vector<std::complex<double>> result;
  // Zero constant terms factor out as exact roots at the origin.
  std::size_t shift = 0;
  while (shift < c.size() - 1 && c[shift] == 0.0) ++shift;
  for (std::size_t k = 0; k < shift; ++k) result.emplace_back(0.0, 0.0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));

  const std::size_t n = c.size() - 1;
  if (n == 0) return result;

  // Monic, then rescale the variable so the companion matrix is balanced:
  // with gamma ~ the root-radius bound, p(gamma*z) has coefficients of
  // comparable size and the eigensolve keeps more digits.
  const double lead = c.back();
  for (double& v : c) v /= lead;
  double gamma = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = std::abs(c[k]);
    if (mag > 0.0)
      gamma = std::max(gamma, std::pow(mag, 1.0 / static_cast<double>(n - k)));
  }
  if (gamma <= 0.0) gamma = 1.0;
  double scale = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    scale /= gamma;
    c[k] *= scale;  // coefficient of z^k in p(gamma*z)/gamma^n
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("roots: companion-matrix eigensolve failed to converge");

  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    result.push_back(gamma * solver.eigenvalues()[i]);
  return result;
}

Polynomial from_roots(std::span<const std::complex<double>> roots, double leading) {
  Polynomial p = Polynomial::constant(leading);
  std::vector<std::complex<double>> pending(roots.begin(), roots.end());
  while (!pending.empty()) {
    const std::complex<double> r = pending.back();
    pending.pop_back();
    const double imag_tol = 1e-8 * (1.0 + std::abs(r));
    if (std::abs(r.imag()) <= imag_tol) {
      p *= Polynomial{-r.real(), 1.0};
      continue;
    }
    // Find the closest match to the conjugate and expand the pair as a real
    // quadratic.
    std::size_t best = pending.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const double dist = std::abs(pending[i] - std::conj(r));
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best == pending.size())
      throw Error("from_roots: complex root without a conjugate partner");
    const std::complex<double> mate = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    const double sum = r.real() + mate.real();
    const double prod = (r * mate).real();
    p *= Polynomial{prod, -sum, 1.0};
  }
  return p;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw ZeroPolynomial("divmod: division by the zero polynomial");
  if (num.degree() < den.degree()) return {Polynomial{}, num};

  std::vector<double> rem = num.coefficients();
  const std::vector<double>& d = den.coefficients();
  const int dn = den.degree();
  const double lead = den.leading();
  std::vector<double> quot(static_cast<std::size_t>(num.degree() - dn) + 1, 0.0);

  for (int k = num.degree() - dn; k >= 0; --k) {
    const double q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * d[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(std::max(dn, 0)));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

}  // namespace qtrack
