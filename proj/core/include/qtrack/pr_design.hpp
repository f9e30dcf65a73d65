#pragma once

#include <span>
#include <vector>

#include "qtrack/reference.hpp"
#include "qtrack/transfer_function.hpp"

namespace qtrack {

/// gain * s / (s^2 + omega^2): lossless resonator pinned at omega.
struct ResonantTerm {
  double gain = 0.0;
  double omega = 0.0;
};

/// gain / (s + pole): strictly passive first-order lag.
struct FirstOrderTerm {
  double gain = 0.0;
  double pole = 0.0;
};

/// gain * (s + zero) / (s^2 + c s + d): damped second-order section.
struct SecondOrderTerm {
  double gain = 0.0;
  double zero = 0.0;
  double c = 0.0;
  double d = 0.0;
};

/// Additive composition
///   H(s) = delta0 * k0 / s
///        + sum gain_i s / (s^2 + omega_i^2)
///        + sum gain_i / (s + pole_i)
///        + sum gain_i (s + zero_i) / (s^2 + c_i s + d_i)
/// which is positive real by construction whenever the admissibility
/// constraints hold:
///   1. every gain (including k0) is >= 0,
///   2. every first-order pole is > 0,
///   3. every second-order section has c > 0, d > 0 and 0 <= zero <= c.
struct PRComposition {
  int delta0 = 0;
  double k0 = 0.0;
  std::vector<ResonantTerm> resonant;
  std::vector<FirstOrderTerm> first_order;
  std::vector<SecondOrderTerm> second_order;

  /// Throws ConstraintViolation (with the violated constraint number) or
  /// qtrack::Error for structural problems (delta0 outside {0,1},
  /// nonpositive resonant frequency).
  void validate() const;

  /// Validates, then returns the sum as a single reduced rational function.
  TransferFunction compose() const;
};

/// Result of the passivity check of a rational function.
struct PositiveRealReport {
  bool positive_real = false;
  /// No pole lies strictly in the right half plane.
  bool poles_in_closed_left_half_plane = false;
  /// Every imaginary-axis pole is simple.
  bool imaginary_axis_poles_simple = false;
  /// Every imaginary-axis pole has a (numerically) real, nonnegative residue.
  bool residues_nonnegative = false;
  /// Smallest Re{H(j w)} seen on the sweep and where it occurred.
  double min_real_part = 0.0;
  double min_real_part_omega = 0.0;
};

/// Frequency grid for the passivity sweep: 1e4 log-spaced points spanning
/// [1e-3 * w_min, 1e3 * w_max] around the function's pole/zero magnitudes,
/// plus 100 linear points bracketing each imaginary-axis pole outside an
/// exclusion radius of 1e-6 * w.
std::vector<double> default_pr_sweep(const TransferFunction& h);

/// Positive-real test: pole locations and residues from the reduced
/// function, plus a sweep of Re{H(j w)} >= -pr_tol (1e-9).
PositiveRealReport check_positive_real(const TransferFunction& h);
PositiveRealReport check_positive_real(const TransferFunction& h,
                                       std::span<const double> sweep);

/// What the internal-model conditions require of a loop function H = C*G
/// facing a given reference, and whether this H provides it.
struct TheoremOneReport {
  /// Simple origin pole present iff the reference carries a constant offset.
  bool integrator_ok = false;
  /// Per reference harmonic: a simple pole pair at +/- j omega_i.
  std::vector<bool> resonant_pair_ok;
  /// Every remaining pole is strictly stable.
  bool remaining_poles_stable = false;
  PositiveRealReport pr;

  bool resonant_pairs_all_ok() const;
  /// Conjunction of all four conditions (positive realness included).
  bool ok() const;
};

TheoremOneReport check_theorem1(const TransferFunction& h, const ReferenceSpec& ref);

/// C = target_h / plant, made proper by appending first-order poles
/// 1 / (s/p + 1) at p = causality_pole_factor * (largest resonant frequency
/// of target_h).  Throws UnstableCancellation if the division would cancel
/// plant poles or zeros in the closed right half plane -- except the plant's
/// own origin pole when target_h contains one, which is the intended way for
/// the plant to supply the integrator.  Throws ImproperUnfixable if padding
/// cannot reach properness.
TransferFunction synthesize_controller(const TransferFunction& target_h,
                                       const TransferFunction& plant,
                                       double causality_pole_factor = 100.0);

}  // namespace qtrack
