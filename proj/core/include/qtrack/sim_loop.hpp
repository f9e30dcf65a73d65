#pragma once

#include <optional>
#include <vector>

#include "qtrack/quantizer.hpp"
#include "qtrack/reference.hpp"
#include "qtrack/state_space.hpp"

namespace qtrack {

/// Scheduled set-point move: the reference's constant offset becomes
/// new_center at t_step.
struct StepChange {
  double t_step = 0.0;
  double new_center = 0.0;
};

/// One axis of the quantized tracking loop
///   e~ -> controller -> u -> plant -> y,
/// closed through the quantizer.  With quantize_reference true (the
/// architecture under study) the controller input is
/// e~ = q(r) - q(y): both signals cross the quantizer, so e~ can reach and
/// stay at exactly zero.  With it false the loop degrades to the naive
/// e~ = r - q(y) wiring used as the baseline for comparison.
struct LoopConfig {
  StateSpaceModel controller;
  StateSpaceModel plant;  ///< must be strictly proper (D == 0)
  UniformQuantizer quantizer{1.0};
  ReferenceSpec reference;
  double dt = 1e-5;
  double t_end = 4.0;
  int record_stride = 10;
  bool quantize_reference = true;
  std::optional<StepChange> step;
  /// Initial states; empty means zero.  When nonempty the length must match
  /// the corresponding block's order.
  StateVector x0_controller;
  StateVector x0_plant;
  /// Simulation aborts (NumericalDivergence) when |y| exceeds
  /// divergence_factor * max(reference amplitude, quantizer step).
  double divergence_factor = 1e9;
};

/// Recorded samples, one row per record_stride steps (step starts, plus the
/// final instant when it falls on the stride).  Invariants: all columns have
/// equal length, e = r - y and, when the reference is quantized,
/// e_tilde = qr - qy at every row.
struct SimTrace {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> y;
  std::vector<double> qr;
  std::vector<double> qy;
  std::vector<double> e;
  std::vector<double> e_tilde;
  std::vector<double> u;

  /// Last step-start time (full dt resolution, not just recorded rows) at
  /// which the controller input was nonzero; negative infinity if it never
  /// was.  After this instant the loop input was identically zero.
  double e_tilde_last_nonzero = 0.0;

  std::size_t size() const { return t.size(); }
};

/// Simulate one axis.  Quantized signals are sampled at each step start and
/// held across the step; the reference itself is evaluated analytically at
/// the RK4 substep times.  Throws NumericalDivergence if the output runs
/// away, qtrack::Error for invalid configuration.
SimTrace simulate_axis(const LoopConfig& config);

/// Both axes of a scan, stepped independently on a shared time grid.
struct DualAxisTrace {
  SimTrace x;
  SimTrace y;
  /// Euclidean tracking error sqrt(ex^2 + ey^2) per recorded row.
  std::vector<double> e_norm;
};

/// Runs both axes (they share dt, t_end and record_stride; mismatches are
/// an error) and assembles the euclidean error.
DualAxisTrace simulate_dual(const LoopConfig& x_axis, const LoopConfig& y_axis);

/// Returns a copy of the config with a set-point step scheduled.
LoopConfig apply_step_change(LoopConfig config, double t_step, double new_center);

}  // namespace qtrack
