#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtrack/lissajous.hpp"
#include "qtrack/sim_loop.hpp"
#include "qtrack/transfer_function.hpp"

namespace qtrack::cli {

enum class AxisSelection { Both, XOnly, YOnly };

/// Gains of the additively composed loop target
///   k0/s + resonant_k * s/(s^2 + w_axis^2) + first_order_k/(s + plant_a)
/// from which the controller is synthesized per axis.
struct DesignParams {
  double k0 = 0.0;
  double resonant_k = 0.0;
  double first_order_k = 0.0;
  double causality_pole_factor = 100.0;
};

/// Explicit controller as ascending numerator/denominator coefficients.
struct ControllerCoeffs {
  std::vector<double> num;
  std::vector<double> den;
};

struct StepSpec {
  double t_step = 0.0;
  double new_center_x = 0.0;
  double new_center_y = 0.0;
};

/// Everything a run needs, mirroring the JSON document one to one.
/// Displacements are micrometres, times seconds, frequencies rad/s (f in Hz).
struct ExperimentConfig {
  double plant_a = 0.0;
  double plant_b = 0.0;
  double delta = 1.0;
  double dt = 1e-5;
  double t_end = 4.0;
  int record_stride = 10;
  AxisSelection axes = AxisSelection::Both;
  bool quantize_reference = true;
  double divergence_factor = 1e9;
  std::optional<DesignParams> design;
  std::optional<ControllerCoeffs> controller_x;
  std::optional<ControllerCoeffs> controller_y;
  LissajousSpec trajectory;
  std::optional<StepSpec> step;
};

/// Strict parse: unknown keys anywhere are an error, required keys and
/// sections are named in the message when missing, values are type- and
/// range-checked.  Throws qtrack::Error.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// The config as a JSON document with all defaults materialized.  Feeding the
/// result back through parse_config reconstructs the identical config, which
/// is what makes manifests replayable.
nlohmann::json normalized_json(const ExperimentConfig& config);

/// One axis, ready to run: the rational-function view for design checks and
/// the assembled loop for simulation.
struct AxisBuild {
  char name = 'x';
  TransferFunction plant_tf;
  TransferFunction controller_tf;
  TransferFunction loop_tf;  ///< controller * plant
  LoopConfig loop;
};

struct ExperimentBuild {
  FrequencyPlan plan;
  std::vector<AxisBuild> axes;  ///< x first, then y; one entry if single-axis
};

/// Synthesizes or adopts the controllers, builds the axis references and
/// assembles LoopConfigs.  Throws qtrack::Error (or a subclass) when the
/// design is infeasible.
ExperimentBuild build_experiment(const ExperimentConfig& config);

}  // namespace qtrack::cli
