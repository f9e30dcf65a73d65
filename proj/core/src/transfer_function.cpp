#include "qtrack/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtrack/compensated.hpp"
#include "qtrack/errors.hpp"

namespace qtrack {
namespace {

// Scale of |p| evaluated with all-positive coefficients; reference magnitude
// for deciding whether a computed value has any digits left.
double eval_scale(const Polynomial& p, double mag) {
  double scale = 0.0;
  double power = 1.0;
  for (double c : p.coefficients()) {
    scale += std::abs(c) * power;
    power *= mag;
  }
  return scale;
}

constexpr double kPoleGuard = 1e-12;

}  // namespace

TransferFunction::TransferFunction() : num_{}, den_{1.0} {}

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw ZeroPolynomial("TransferFunction: denominator is the zero polynomial");
  if (num_.is_zero()) den_ = Polynomial{1.0};
}

int TransferFunction::relative_degree() const {
  if (num_.is_zero()) return std::numeric_limits<int>::max();
  return den_.degree() - num_.degree();
}

std::complex<double> TransferFunction::eval(std::complex<double> s) const {
  const std::complex<double> d = den_.eval(s);
  if (std::abs(d) <= kPoleGuard * eval_scale(den_, std::abs(s)))
    throw PoleAtFrequency("TransferFunction::eval: evaluation point is numerically a pole");
  return num_.eval(s) / d;
}

std::complex<double> TransferFunction::eval_jomega(double omega) const {
  const std::complex<double> d = den_.eval_jomega(omega);
  if (std::abs(d) <= kPoleGuard * eval_scale(den_, std::abs(omega)))
    throw PoleAtFrequency("TransferFunction::eval_jomega: frequency lies on a pole");
  return num_.eval_jomega(omega) / d;
}

double TransferFunction::real_part_jomega(double omega) const {
  const std::complex<double> n = num_.eval_jomega(omega);
  const std::complex<double> d = den_.eval_jomega(omega);
  const double dd = d.real() * d.real() + d.imag() * d.imag();
  if (std::sqrt(dd) <= kPoleGuard * eval_scale(den_, std::abs(omega)))
    throw PoleAtFrequency("TransferFunction::real_part_jomega: frequency lies on a pole");
  // Re{n * conj(d)} with a compensated dot product: the two terms cancel
  // almost exactly for lossless functions.
  return compensated_dot2(n.real(), d.real(), n.imag(), d.imag()) / dd;
}

namespace {

// Divides both polynomials by their shared count of exact zero constant
// coefficients.  This cancels origin roots without touching any other
// coefficient.
void cancel_structural_origin(Polynomial& num, Polynomial& den) {
  const auto leading_zeros = [](const Polynomial& p) {
    int count = 0;
    while (count < p.degree() && p.coeff(count) == 0.0) ++count;
    return count;
  };
  const int shared = std::min(leading_zeros(num), leading_zeros(den));
  if (shared == 0) return;
  const auto shift = [shared](const Polynomial& p) {
    std::vector<double> c(p.coefficients().begin() + shared, p.coefficients().end());
    return Polynomial(std::move(c));
  };
  num = shift(num);
  den = shift(den);
}

// Deflates p by the product of the given roots: real roots as linear factors,
// complex ones paired into real quadratics, each removed by long division
// with the remainder discarded.
Polynomial deflate(const Polynomial& p, std::vector<std::complex<double>> cancelled) {
  Polynomial result = p;
  while (!cancelled.empty()) {
    const std::complex<double> r = cancelled.back();
    cancelled.pop_back();
    const double imag_tol = 1e-8 * (1.0 + std::abs(r));
    Polynomial factor;
    if (std::abs(r.imag()) <= imag_tol) {
      factor = Polynomial{-r.real(), 1.0};
    } else {
      std::size_t best = cancelled.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < cancelled.size(); ++i) {
        const double dist = std::abs(cancelled[i] - std::conj(r));
        if (dist < best_dist) {
          best_dist = dist;
          best = i;
        }
      }
      if (best == cancelled.size()) {
        // Lone complex root (numerical asymmetry): treat as real.
        factor = Polynomial{-r.real(), 1.0};
      } else {
        const std::complex<double> mate = cancelled[best];
        cancelled.erase(cancelled.begin() + static_cast<std::ptrdiff_t>(best));
        factor = Polynomial{(r * mate).real(), -(r.real() + mate.real()), 1.0};
      }
    }
    result = divmod(result, factor).first;
  }
  return result;
}

}  // namespace

TransferFunction TransferFunction::reduced() const {
  if (num_.is_zero()) return TransferFunction{};

  Polynomial num = num_;
  Polynomial den = den_;
  cancel_structural_origin(num, den);

  if (num.degree() >= 1 && den.degree() >= 1) {
    std::vector<std::complex<double>> num_roots = roots(num);
    std::vector<std::complex<double>> den_roots = roots(den);

    double max_mag = 0.0;
    for (const auto& r : num_roots) max_mag = std::max(max_mag, std::abs(r));
    for (const auto& r : den_roots) max_mag = std::max(max_mag, std::abs(r));
    const double cancel_tol = 1e-8 * (1.0 + max_mag);

    // Greedy nearest matching, den side driving, deterministic order.
    std::sort(den_roots.begin(), den_roots.end(), [](const auto& a, const auto& b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    std::vector<bool> num_used(num_roots.size(), false);
    std::vector<std::complex<double>> cancel_num, cancel_den;
    for (const auto& dr : den_roots) {
      std::size_t best = num_roots.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < num_roots.size(); ++i) {
        if (num_used[i]) continue;
        const double dist = std::abs(num_roots[i] - dr);
        if (dist < best_dist) {
          best_dist = dist;
          best = i;
        }
      }
      if (best < num_roots.size() && best_dist <= cancel_tol) {
        num_used[best] = true;
        cancel_num.push_back(num_roots[best]);
        cancel_den.push_back(dr);
      }
    }
    if (!cancel_den.empty()) {
      num = deflate(num, cancel_num);
      den = deflate(den, cancel_den);
    }
  }

  const double lead = den.leading();
  num *= 1.0 / lead;
  den *= 1.0 / lead;
  return TransferFunction(std::move(num), std::move(den));
}

TransferFunction TransferFunction::inverse() const {
  if (num_.is_zero())
    throw ZeroPolynomial("TransferFunction::inverse: cannot invert the zero function");
  return TransferFunction(den_, num_);
}

TransferFunction operator+(const TransferFunction& a, const TransferFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Polynomial num = a.num_ * b.den_ + b.num_ * a.den_;
  Polynomial den = a.den_ * b.den_;
  return TransferFunction(std::move(num), std::move(den)).reduced();
}

TransferFunction operator-(const TransferFunction& a, const TransferFunction& b) {
  return a + (b * -1.0);
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
  if (a.is_zero() || b.is_zero()) return TransferFunction{};
  Polynomial num = a.num_ * b.num_;
  Polynomial den = a.den_ * b.den_;
  return TransferFunction(std::move(num), std::move(den)).reduced();
}

TransferFunction operator/(const TransferFunction& a, const TransferFunction& b) {
  return a * b.inverse();
}

TransferFunction operator*(const TransferFunction& a, double scale) {
  if (a.is_zero() || scale == 0.0) return TransferFunction{};
  return TransferFunction(a.num_ * scale, a.den_);
}

TransferFunction operator*(double scale, const TransferFunction& a) { return a * scale; }

TransferFunction tf_one() { return TransferFunction(Polynomial{1.0}, Polynomial{1.0}); }

TransferFunction tf_integrator() {
  return TransferFunction(Polynomial{1.0}, Polynomial{0.0, 1.0});
}

}  // namespace qtrack
