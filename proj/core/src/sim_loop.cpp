#include "qtrack/sim_loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtrack/errors.hpp"

namespace qtrack {
namespace {

void validate(const LoopConfig& config) {
  if (!(config.dt > 0.0)) throw Error("simulate_axis: dt must be positive");
  if (!(config.t_end >= config.dt))
    throw Error("simulate_axis: t_end must cover at least one step");
  if (config.record_stride < 1)
    throw Error("simulate_axis: record_stride must be >= 1");
  if (config.plant.D != 0.0)
    throw Error("simulate_axis: plant must be strictly proper (no direct feedthrough)");
  if (config.step && !(config.step->t_step >= 0.0))
    throw Error("simulate_axis: step time must be nonnegative");
  if (config.x0_controller.size() != 0 &&
      config.x0_controller.size() != config.controller.order())
    throw Error("simulate_axis: x0_controller length must match controller order");
  if (config.x0_plant.size() != 0 &&
      config.x0_plant.size() != config.plant.order())
    throw Error("simulate_axis: x0_plant length must match plant order");
}

}  // namespace

SimTrace simulate_axis(const LoopConfig& config) {
  validate(config);

  const StateSpaceModel loop = series(config.controller, config.plant);
  const int nc = config.controller.order();
  const int np = config.plant.order();

  const ReferenceSpec& base_ref = config.reference;
  std::optional<ReferenceSpec> stepped_ref;
  double t_step = std::numeric_limits<double>::infinity();
  double stepped_center = 0.0;
  if (config.step) {
    t_step = config.step->t_step;
    stepped_center = config.step->new_center;
    stepped_ref = base_ref.with_center(stepped_center);
  }
  const auto ref_eval = [&](double tau) {
    return tau < t_step ? base_ref.eval(tau) : stepped_ref->eval(tau);
  };

  double bound = config.divergence_factor *
                 std::max({base_ref.amplitude_scale(),
                           config.step ? std::abs(stepped_center) +
                                             base_ref.amplitude_scale()
                                       : 0.0,
                           config.quantizer.delta()});

  const auto steps = static_cast<std::int64_t>(std::llround(config.t_end / config.dt));
  SimTrace trace;
  const std::size_t approx_rows =
      static_cast<std::size_t>(steps / config.record_stride) + 2;
  for (auto* col : {&trace.t, &trace.r, &trace.y, &trace.qr, &trace.qy, &trace.e,
                    &trace.e_tilde, &trace.u})
    col->reserve(approx_rows);
  trace.e_tilde_last_nonzero = -std::numeric_limits<double>::infinity();

  StateVector z = StateVector::Zero(nc + np);
  if (config.x0_controller.size() != 0) z.head(nc) = config.x0_controller;
  if (config.x0_plant.size() != 0) z.tail(np) = config.x0_plant;
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const double r_t = ref_eval(t);
    const double y_t =
        np > 0 ? static_cast<double>(config.plant.C * z.tail(np)) : 0.0;
    const double qr = config.quantizer.quantize(r_t);
    const double qy = config.quantizer.quantize(y_t);
    const double e_tilde = config.quantize_reference ? qr - qy : r_t - qy;

    if (e_tilde != 0.0) trace.e_tilde_last_nonzero = t;

    if (k % config.record_stride == 0) {
      const double u =
          config.controller.output(nc > 0 ? z.head(nc).eval() : StateVector{}, e_tilde);
      trace.t.push_back(t);
      trace.r.push_back(r_t);
      trace.y.push_back(y_t);
      trace.qr.push_back(qr);
      trace.qy.push_back(qy);
      trace.e.push_back(r_t - y_t);
      trace.e_tilde.push_back(e_tilde);
      trace.u.push_back(u);
    }
    if (k == steps) break;

    if (std::abs(y_t) > bound)
      throw NumericalDivergence("simulate_axis: output exceeded the divergence bound",
                                t, y_t);

    // Quantized signals are held over the step; with the reference
    // unquantized its analytic value enters the substeps directly.
    const std::function<double(double)> input =
        config.quantize_reference
            ? std::function<double(double)>([e_tilde](double) { return e_tilde; })
            : std::function<double(double)>(
                  [&ref_eval, qy](double tau) { return ref_eval(tau) - qy; });
    z = rk4_step(loop, z, input, t, config.dt);
  }
  return trace;
}

DualAxisTrace simulate_dual(const LoopConfig& x_axis, const LoopConfig& y_axis) {
  if (x_axis.dt != y_axis.dt || x_axis.t_end != y_axis.t_end ||
      x_axis.record_stride != y_axis.record_stride)
    throw Error("simulate_dual: axes must share dt, t_end and record_stride");

  DualAxisTrace dual;
  dual.x = simulate_axis(x_axis);
  dual.y = simulate_axis(y_axis);
  dual.e_norm.reserve(dual.x.size());
  for (std::size_t i = 0; i < dual.x.size(); ++i)
    dual.e_norm.push_back(std::hypot(dual.x.e[i], dual.y.e[i]));
  return dual;
}

LoopConfig apply_step_change(LoopConfig config, double t_step, double new_center) {
  config.step = StepChange{t_step, new_center};
  return config;
}

}  // namespace qtrack
