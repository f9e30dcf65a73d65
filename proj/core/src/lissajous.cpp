#include "qtrack/lissajous.hpp"

#include <cmath>
#include <numbers>

#include "qtrack/errors.hpp"

namespace qtrack {

void LissajousSpec::validate() const {
  if (!(ax > 0.0) || !(ay > 0.0))
    throw Error("LissajousSpec: amplitudes must be positive");
  if (N < 1) throw Error("LissajousSpec: N must be a positive integer");
  if (!(f > 0.0)) throw Error("LissajousSpec: frame rate must be positive");
}

FrequencyPlan plan_frequencies(const LissajousSpec& spec) {
  spec.validate();
  FrequencyPlan plan;
  plan.omega_x = 2.0 * std::numbers::pi * spec.N * spec.f;
  plan.omega_y = std::numbers::pi * (2.0 * spec.N - 1.0) * spec.f;
  plan.ratio_num = 2 * static_cast<std::int64_t>(spec.N);
  plan.ratio_den = 2 * static_cast<std::int64_t>(spec.N) - 1;
  plan.frame_period = 1.0 / spec.f;
  plan.closure_period = 2.0 / spec.f;
  return plan;
}

double scan_resolution(const LissajousSpec& spec) {
  spec.validate();
  return std::numbers::pi * spec.ax * spec.ay /
         (spec.N * std::hypot(spec.ax, spec.ay));
}

int required_N(double ax, double ay, double h_target) {
  if (!(ax > 0.0) || !(ay > 0.0))
    throw Error("required_N: amplitudes must be positive");
  if (!(h_target > 0.0))
    throw Error("required_N: target resolution must be positive");

  const double exact = std::numbers::pi * ax * ay / (h_target * std::hypot(ax, ay));
  int n = std::max(1, static_cast<int>(std::ceil(exact)));
  // ceil() can be one off when the quotient rounds across an integer;
  // settle against the resolution formula itself.
  const auto resolution = [&](int candidate) {
    return scan_resolution({0.0, 0.0, ax, ay, candidate, 1.0});
  };
  while (n > 1 && resolution(n - 1) <= h_target) --n;
  while (resolution(n) > h_target) ++n;
  return n;
}

std::pair<ReferenceSpec, ReferenceSpec> axis_references(const LissajousSpec& spec) {
  const FrequencyPlan plan = plan_frequencies(spec);
  const double quarter = std::numbers::pi / 2.0;  // sin(wt + pi/2) = cos(wt)
  ReferenceSpec x(1, spec.x0, {{spec.ax, plan.omega_x, quarter}},
                  2.0 * std::numbers::pi / plan.omega_x);
  ReferenceSpec y(1, spec.y0, {{spec.ay, plan.omega_y, quarter}},
                  2.0 * std::numbers::pi / plan.omega_y);
  return {x, y};
}

}  // namespace qtrack
