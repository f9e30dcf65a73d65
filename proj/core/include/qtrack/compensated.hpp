#pragma once

#include <cmath>
#include <cstddef>
#include <span>

// Error-free transformations and compensated evaluation kernels.
//
// Passivity sweeps evaluate rational functions close to lightly damped poles,
// where plain Horner loses most of its digits to cancellation.  The helpers
// here (TwoSum / TwoProd via fused multiply-add, compensated Horner, and a
// compensated two-term dot product) recover results as accurate as if the
// intermediate arithmetic had been done in roughly twice the working
// precision.

namespace qtrack {

struct SplitSum {
  double value;
  double err;
};

/// Error-free sum: value + err == a + b exactly.
inline SplitSum two_sum(double a, double b) {
  const double s = a + b;
  const double z = s - a;
  return {s, (a - (s - z)) + (b - z)};
}

/// Error-free product: value + err == a * b exactly (needs FMA).
inline SplitSum two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Horner evaluation of a real polynomial with a compensated correction term.
/// `coeffs` is in ascending powers.  The result is faithful (error of order
/// eps * |p(x)| plus an eps^2 term) even when the naive evaluation cancels.
inline double compensated_horner(std::span<const double> coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  std::size_t i = coeffs.size() - 1;
  double r = coeffs[i];
  double corr = 0.0;
  while (i-- > 0) {
    const SplitSum prod = two_prod(r, x);
    const SplitSum sum = two_sum(prod.value, coeffs[i]);
    r = sum.value;
    corr = corr * x + (prod.err + sum.err);
  }
  return r + corr;
}

/// Compensated a1*b1 + a2*b2.  Keeps the sign of the true dot product when
/// the two products nearly cancel.
inline double compensated_dot2(double a1, double b1, double a2, double b2) {
  const SplitSum p1 = two_prod(a1, b1);
  const SplitSum p2 = two_prod(a2, b2);
  const SplitSum s = two_sum(p1.value, p2.value);
  return s.value + (p1.err + p2.err + s.err);
}

}  // namespace qtrack
