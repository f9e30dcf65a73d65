#pragma once

#include <cstdint>
#include <utility>

#include "qtrack/reference.hpp"

namespace qtrack {

/// Rectangular Lissajous scan: centre (x0, y0), cosine amplitudes ax and ay
/// (the rectangle spans x0 +/- ax by y0 +/- ay), N >= 1 scan cycles and
/// frame rate f in Hz.
struct LissajousSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  double ax = 1.0;
  double ay = 1.0;
  int N = 1;
  double f = 1.0;

  /// Throws qtrack::Error unless ax, ay, f > 0 and N >= 1.
  void validate() const;
};

/// Axis frequencies realizing the 2N : 2N-1 scan ratio.
struct FrequencyPlan {
  double omega_x = 0.0;  ///< 2*pi*N*f
  double omega_y = 0.0;  ///< pi*(2N-1)*f
  /// The frequency ratio omega_x : omega_y held exactly as integers.
  std::int64_t ratio_num = 0;  ///< 2N
  std::int64_t ratio_den = 0;  ///< 2N-1
  /// One scan frame, 1/f.  The x axis repeats each frame; the y axis
  /// completes an odd number of half-cycles, so consecutive frames mirror.
  double frame_period = 0.0;
  /// 2/f: after two frames both axes (and the 2D curve) close exactly.
  double closure_period = 0.0;
};

FrequencyPlan plan_frequencies(const LissajousSpec& spec);

/// Largest gap between adjacent scan passes:
/// h = pi * ax * ay / (N * sqrt(ax^2 + ay^2)).
double scan_resolution(const LissajousSpec& spec);

/// Smallest N whose scan resolution is <= h_target for the given amplitudes.
int required_N(double ax, double ay, double h_target);

/// Per-axis tracking references r(t) = centre + amplitude * cos(omega t),
/// each carrying its own fundamental period (2*pi/omega) and a constant
/// offset term (delta0 = 1) even when the centre is zero.
std::pair<ReferenceSpec, ReferenceSpec> axis_references(const LissajousSpec& spec);

}  // namespace qtrack
