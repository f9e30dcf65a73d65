#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qtrack/quantizer.hpp"

namespace qtrack {

/// One sinusoidal component amplitude * sin(omega * t + phase).
struct SinusoidTerm {
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
};

/// Periodic reference r(t) = delta0 * a0 + sum_i a_i sin(omega_i t + theta_i).
///
/// delta0 is 0 or 1 and flags whether the constant offset participates; every
/// omega_i is a positive integer multiple of 2*pi/period, the omegas are
/// distinct, and there is at least one sinusoid with nonzero amplitude.
class ReferenceSpec {
 public:
  /// Validates the invariants above; throws qtrack::Error on violation.
  ReferenceSpec(int delta0, double a0, std::vector<SinusoidTerm> terms,
                double period);

  int delta0() const { return delta0_; }
  double a0() const { return a0_; }
  const std::vector<SinusoidTerm>& terms() const { return terms_; }
  double period() const { return period_; }
  /// Number of sinusoids m.
  int harmonic_count() const { return static_cast<int>(terms_.size()); }
  /// |a0| + sum |a_i|: bound on |r|, used to scale divergence limits.
  double amplitude_scale() const;

  double eval(double t) const;
  double eval_derivative(double t) const;

  /// The row [1, sin(w1 t), cos(w1 t), ..., sin(wm t), cos(wm t)],
  /// length 2m + 1.
  Eigen::RowVectorXd basis_row(double t) const;
  /// Coordinates of r in that basis:
  /// [delta0*a0, a1 cos(th1), a1 sin(th1), ...], so basis_row(t) * rho() == r(t).
  Eigen::VectorXd rho() const;

  /// Same spec with the constant offset replaced (used for set-point steps).
  ReferenceSpec with_center(double new_a0) const;

 private:
  int delta0_;
  double a0_;
  std::vector<SinusoidTerm> terms_;
  double period_;
};

/// Where r crosses quantization-region boundaries during one period.
struct CrossingMatrix {
  /// p x (2m+1); row k is basis_row(times[k]).
  Eigen::MatrixXd rows;
  /// Refined crossing instants in [0, period).
  std::vector<double> times;
  /// The boundary value crossed at each instant.
  std::vector<double> levels;

  int count() const { return static_cast<int>(times.size()); }
};

/// Scans one period on a 4096-sample grid for region-index changes, refines
/// each to period * 1e-10 by bisection, and deduplicates instants closer
/// than twice that tolerance.  Throws NoCrossings when the reference never
/// leaves its quantization region.
CrossingMatrix find_crossings(const ReferenceSpec& ref, const UniformQuantizer& q);

/// Outcome of the identifiability test on the crossing matrix.
struct RecoverabilityReport {
  bool recoverable = false;
  int crossing_count = 0;     // p
  int required = 0;           // 2m + 1
  int rank = 0;
  double rank_tolerance = 0.0;
  Eigen::VectorXd singular_values;
};

/// True iff the crossing instants pin the reference down uniquely:
/// p >= 2m + 1 and the crossing matrix has full column rank (numerical rank
/// via SVD with tolerance sigma_max * 1e-8 * max(p, 2m+1)).  A reference
/// with no crossings is reported unrecoverable rather than an error.
RecoverabilityReport reference_is_recoverable(const ReferenceSpec& ref,
                                              const UniformQuantizer& q);

}  // namespace qtrack
